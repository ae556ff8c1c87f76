#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "parplan/task.hpp"

namespace parplan {

namespace {

using Binding = std::vector<int>;  // parameter index -> object index

struct CompiledLiteral {
  std::string predicate;
  // >= 0: parameter index; < 0: -(constant object index) - 1
  std::vector<int> slots;
  int last_param = -1;  // literal can be checked once this parameter is bound
};

struct CompiledSchema {
  const ActionSchema *schema;
  std::vector<std::vector<int>> candidates;  // per parameter
  std::vector<CompiledLiteral> prec, add, del;
};

class Grounder {
 public:
  Grounder(const Domain &d, const Problem &p) : domain_(d), problem_(p) {
    std::vector<TypedName> all = d.constants;
    all.insert(all.end(), p.objects.begin(), p.objects.end());
    std::sort(all.begin(), all.end(), [](const TypedName &a, const TypedName &b) { return a.name < b.name; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const TypedName &a, const TypedName &b) { return a.name == b.name; }),
              all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      object_index_[all[i].name] = static_cast<int>(i);
      objects_.push_back(all[i]);
    }
    for (const auto &s : d.actions) compile(s);
  }

  PlanningTask run(GroundingReport &report) {
    for (const auto &l : problem_.init) reachable_.insert(key(l.predicate, l.args));

    // Delete-free fixpoint over instantiations.
    std::set<std::pair<int, Binding>> found;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < schemas_.size(); ++s) {
        Binding b(schemas_[s].schema->parameters.size(), -1);
        enumerate(schemas_[s], 0, b, [&](const Binding &full) {
          if (!found.emplace(static_cast<int>(s), full).second) return;
          for (const auto &l : schemas_[s].add)
            if (reachable_.insert(instantiate_key(l, full)).second) changed = true;
        });
      }
    }

    PlanningTask task;
    task.domain_name = domain_.name;
    task.problem_name = problem_.name;
    for (const auto &o : objects_) task.objects.push_back(o.name);

    // Atom table: everything mentioned by init, goal or a kept action, sorted by name.
    std::map<std::string, Atom> atom_map;
    auto note = [&](const std::string &pred, const std::vector<std::string> &args) {
      atom_map.emplace(format_call(pred, args), Atom{pred, args});
    };
    for (const auto &l : problem_.init) note(l.predicate, l.args);
    for (const auto &l : problem_.goal) note(l.predicate, l.args);
    for (const auto &[s, b] : found) {
      const auto &cs = schemas_[s];
      for (const auto *group : {&cs.prec, &cs.add, &cs.del})
        for (const auto &l : *group) note(l.predicate, args_of(l, b));
    }
    std::map<std::string, AtomId> ids;
    for (auto &[name, atom] : atom_map) {
      ids[name] = static_cast<AtomId>(task.atoms.size());
      task.atoms.push_back(atom);
    }
    auto to_set = [&](const std::vector<CompiledLiteral> &lits, const Binding &b) {
      AtomSet out;
      for (const auto &l : lits) out.push_back(ids.at(format_call(l.predicate, args_of(l, b))));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    auto lits_to_set = [&](const std::vector<Literal> &lits) {
      AtomSet out;
      for (const auto &l : lits) out.push_back(ids.at(format_call(l.predicate, l.args)));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    task.initial_state = lits_to_set(problem_.init);
    task.goal = lits_to_set(problem_.goal);

    report.instantiated = found.size();
    for (const auto &[s, b] : found) {
      const auto &cs = schemas_[s];
      GroundAction a;
      a.schema = cs.schema->name;
      for (int o : b) a.args.push_back(objects_[o].name);
      a.name = format_call(a.schema, a.args);
      a.prec = to_set(cs.prec, b);
      a.add = to_set(cs.add, b);
      AtomSet del = to_set(cs.del, b);
      if (intersects(a.add, del)) {
        report.warnings.push_back(a.name + ": atom in both add and delete effects; delete dropped");
        del = set_difference(del, a.add);
      }
      a.del = std::move(del);
      if (a.del.empty() && is_subset(a.add, a.prec)) {
        ++report.pruned_noop;
        continue;
      }
      a.id = static_cast<ActionId>(task.actions.size());
      task.actions.push_back(std::move(a));
    }
    task.index();
    return task;
  }

 private:
  static std::string key(const std::string &pred, const std::vector<std::string> &args) {
    return format_call(pred, args);
  }

  std::vector<std::string> args_of(const CompiledLiteral &l, const Binding &b) const {
    std::vector<std::string> out;
    out.reserve(l.slots.size());
    for (int s : l.slots) out.push_back(objects_[s >= 0 ? b[s] : -s - 1].name);
    return out;
  }

  std::string instantiate_key(const CompiledLiteral &l, const Binding &b) const {
    return key(l.predicate, args_of(l, b));
  }

  void compile(const ActionSchema &s) {
    CompiledSchema cs;
    cs.schema = &s;
    std::map<std::string, int> param_index;
    for (std::size_t i = 0; i < s.parameters.size(); ++i) {
      param_index[s.parameters[i].name] = static_cast<int>(i);
      std::vector<int> cand;
      for (std::size_t o = 0; o < objects_.size(); ++o)
        if (domain_.is_subtype(objects_[o].type, s.parameters[i].type)) cand.push_back(static_cast<int>(o));
      cs.candidates.push_back(std::move(cand));
    }
    auto comp = [&](const std::vector<Literal> &lits) {
      std::vector<CompiledLiteral> out;
      for (const auto &l : lits) {
        CompiledLiteral c;
        c.predicate = l.predicate;
        for (const auto &a : l.args) {
          if (a.starts_with("?")) {
            int p = param_index.at(a);
            c.slots.push_back(p);
            c.last_param = std::max(c.last_param, p);
          } else {
            c.slots.push_back(-object_index_.at(a) - 1);
          }
        }
        out.push_back(std::move(c));
      }
      return out;
    };
    cs.prec = comp(s.preconditions);
    cs.add = comp(s.add_effects);
    cs.del = comp(s.del_effects);
    schemas_.push_back(std::move(cs));
  }

  template <typename F>
  void enumerate(const CompiledSchema &cs, std::size_t depth, Binding &b, F &&emit) {
    // literals whose last variable is depth-1 become checkable now
    for (const auto &l : cs.prec)
      if (l.last_param == static_cast<int>(depth) - 1 && !reachable_.count(instantiate_key(l, b))) return;
    if (depth == b.size()) {
      emit(b);
      return;
    }
    for (int o : cs.candidates[depth]) {
      b[depth] = o;
      enumerate(cs, depth + 1, b, emit);
    }
    b[depth] = -1;
  }

  const Domain &domain_;
  const Problem &problem_;
  std::vector<TypedName> objects_;
  std::map<std::string, int> object_index_;
  std::vector<CompiledSchema> schemas_;
  std::unordered_set<std::string> reachable_;
};

}  // namespace

PlanningTask ground(const Domain &domain, const Problem &problem, GroundingReport *report) {
  GroundingReport local;
  GroundingReport &r = report ? *report : local;
  PlanningTask task = Grounder(domain, problem).run(r);
  r.pruned_unreachable = 0;
  // count schema instantiations rejected by reachability, for the report only
  std::size_t total = 0;
  std::vector<TypedName> all = domain.constants;
  all.insert(all.end(), problem.objects.begin(), problem.objects.end());
  for (const auto &s : domain.actions) {
    std::size_t n = 1;
    for (const auto &p : s.parameters) {
      std::size_t c = 0;
      for (const auto &o : all) c += domain.is_subtype(o.type, p.type);
      n *= c;
    }
    total += n;
  }
  r.pruned_unreachable = total >= r.instantiated ? total - r.instantiated : 0;
  return task;
}

std::string grounding_summary(const PlanningTask &task, const GroundingReport &report) {
  std::ostringstream os;
  os << "grounding " << task.domain_name << "/" << task.problem_name << ": " << task.objects.size()
     << " objects, " << task.num_atoms() << " atoms, " << task.num_actions() << " actions ("
     << report.instantiated << " reachable instantiations, " << report.pruned_unreachable
     << " unreachable, " << report.pruned_noop << " no-op)\n";
  for (const auto &w : report.warnings) os << "  warning: " << w << '\n';
  return os.str();
}

}  // namespace parplan
