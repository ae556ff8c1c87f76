#include "parplan/planning_graph.hpp"

#include <algorithm>
#include <sstream>

namespace parplan {

namespace {

struct NodeTable {
  std::vector<AtomSet> prec;
  std::vector<AtomSet> add;
  std::vector<Bitset> supporters;  // per atom, over action nodes
};

NodeTable make_nodes(const PlanningTask &task) {
  const std::size_t na = task.num_actions();
  const std::size_t nn = na + task.num_atoms();
  NodeTable t;
  t.prec.resize(nn);
  t.add.resize(nn);
  t.supporters.assign(task.num_atoms(), Bitset(nn));
  for (const auto &a : task.actions) {
    t.prec[a.id] = a.prec;
    t.add[a.id] = a.add;
    for (AtomId p : a.add) t.supporters[p].set(a.id);
  }
  for (AtomId p = 0; p < static_cast<AtomId>(task.num_atoms()); ++p) {
    t.prec[na + p] = {p};
    t.add[na + p] = {p};
    t.supporters[p].set(na + p);
  }
  return t;
}

}  // namespace

PlanningGraph PlanningGraph::build(const PlanningTask &task, GraphMode mode, StopCondition stop) {
  PlanningGraph g = build_layers(task, mode, stop);
  g.index_pairs();
  return g;
}

void PlanningGraph::index_pairs() {
  const std::size_t n = num_atoms_;
  mutex_free_.assign(n, 1);
  for (const auto &m : prop_mutex_)
    for (std::size_t p = 0; p < n; ++p)
      if (mutex_free_[p] && m.row(static_cast<int>(p)).any()) mutex_free_[p] = 0;
  pair_first_.assign(n * n, kNoPairLevel);
  for (int k = 0; k <= horizon(); ++k) {
    const Bitset &present = prop_layers_[k];
    present.for_each([&](int p) {
      present.for_each([&](int q) {
        auto &slot = pair_first_[static_cast<std::size_t>(p) * n + q];
        if (slot == kNoPairLevel && (p == q || !prop_mutex_[k].test(p, q))) slot = static_cast<std::uint16_t>(k);
      });
    });
  }
}

PlanningGraph PlanningGraph::build_layers(const PlanningTask &task, GraphMode mode, StopCondition stop) {
  PlanningGraph g;
  g.mode_ = mode;
  g.num_atoms_ = task.num_atoms();
  g.num_actions_ = task.num_actions();
  const std::size_t nn = g.num_action_nodes();

  // Interference is static: x deletes a precondition or add effect of y.
  g.interference_ = BitMatrix(nn);
  {
    std::vector<std::vector<int>> users(g.num_atoms_);  // nodes with p in prec or add
    for (const auto &a : task.actions) {
      for (AtomId p : a.prec) users[p].push_back(a.id);
      for (AtomId p : a.add) users[p].push_back(a.id);
    }
    for (AtomId p = 0; p < static_cast<AtomId>(g.num_atoms_); ++p)
      users[p].push_back(static_cast<int>(g.num_actions_) + p);
    for (const auto &a : task.actions)
      for (AtomId p : a.del)
        for (int u : users[p])
          if (u != a.id) g.interference_.set(a.id, u);
  }

  g.first_level_.assign(g.num_atoms_, -1);
  g.first_action_level_.assign(nn, -1);
  Bitset init(g.num_atoms_);
  for (AtomId p : task.initial_state) {
    init.set(p);
    g.first_level_[p] = 0;
  }
  g.prop_layers_.push_back(std::move(init));
  g.prop_mutex_.emplace_back(g.num_atoms_);
  g.action_layers_.emplace_back(nn);
  g.action_mutex_.emplace_back(nn);

  auto goals_reached = [&] {
    LevelValue l = g.lev(task.goal);
    return l.is_finite() && l.value() <= g.horizon();
  };
  if (stop == StopCondition::GoalsNonMutex && goals_reached()) return g;

  const NodeTable nodes = make_nodes(task);
  for (;;) {
    // expansion inlined so the node table is built once
    const int k = g.horizon() + 1;
    const Bitset &props = g.prop_layers_[k - 1];
    const BitMatrix &pm = g.prop_mutex_[k - 1];

    Bitset layer(nn);
    for (std::size_t n = 0; n < nn; ++n) {
      const AtomSet &pre = nodes.prec[n];
      bool ok = true;
      for (std::size_t i = 0; ok && i < pre.size(); ++i) {
        if (!props.test(pre[i])) ok = false;
        for (std::size_t j = i + 1; ok && j < pre.size(); ++j)
          if (pm.test(pre[i], pre[j])) ok = false;
      }
      if (ok) {
        layer.set(n);
        if (g.first_action_level_[n] < 0) g.first_action_level_[n] = k;
      }
    }

    BitMatrix am(nn);
    std::vector<int> present;
    layer.for_each([&](int n) { present.push_back(n); });
    for (std::size_t i = 0; i < present.size(); ++i) {
      const int a = present[i];
      g.interference_.row(a).for_each([&](int b) {
        if (b > a && layer.test(b)) am.set(a, b);
      });
      // competing needs
      Bitset needs_mutex(g.num_atoms_);
      for (AtomId p : nodes.prec[a]) needs_mutex |= pm.row(p);
      if (!needs_mutex.any()) continue;
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        const int b = present[j];
        for (AtomId q : nodes.prec[b]) {
          if (needs_mutex.test(q)) {
            am.set(a, b);
            break;
          }
        }
      }
    }
    if (g.mode_ == GraphMode::Serial) {
      for (std::size_t i = 0; i < present.size() && !g.is_noop(present[i]); ++i)
        for (std::size_t j = i + 1; j < present.size() && !g.is_noop(present[j]); ++j)
          am.set(present[i], present[j]);
    }

    Bitset next(g.num_atoms_);
    for (int n : present)
      for (AtomId p : nodes.add[n]) next.set(p);

    std::vector<AtomId> atoms;
    next.for_each([&](int p) { atoms.push_back(p); });
    std::vector<Bitset> sup;
    sup.reserve(atoms.size());
    for (AtomId p : atoms) sup.push_back(nodes.supporters[p] & layer);

    BitMatrix nm(g.num_atoms_);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const AtomId p = atoms[i];
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        const AtomId q = atoms[j];
        // mutexes only ever relax, so old non-mutex pairs stay non-mutex
        if (props.test(p) && props.test(q) && !pm.test(p, q)) continue;
        bool compatible = false;
        sup[i].for_each([&](int a) {
          if (!compatible && !sup[j].subset_of(am.row(a))) compatible = true;
        });
        if (!compatible) nm.set(p, q);
      }
      if (g.first_level_[p] < 0) g.first_level_[p] = k;
    }

    g.action_layers_.push_back(std::move(layer));
    g.action_mutex_.push_back(std::move(am));
    g.prop_layers_.push_back(std::move(next));
    g.prop_mutex_.push_back(std::move(nm));

    if (g.check_level_off()) {
      g.leveled_off_ = true;
      if (!goals_reached())
        throw GoalsUnreachable("planning graph leveled off at level " + std::to_string(g.horizon()) +
                               " without the goals present and pairwise non-mutex");
      return g;
    }
    if (stop == StopCondition::GoalsNonMutex && goals_reached()) return g;
  }
}

bool PlanningGraph::check_level_off() const {
  const int k = horizon();
  if (k < 1) return false;
  return prop_layers_[k] == prop_layers_[k - 1] && prop_mutex_[k] == prop_mutex_[k - 1] &&
         action_layers_[k] == action_layers_[k - 1] && action_mutex_[k] == action_mutex_[k - 1];
}

LevelValue PlanningGraph::past_horizon() const {
  return leveled_off_ ? LevelValue::infinity() : LevelValue(horizon() + 1);
}

LevelValue PlanningGraph::lev(AtomId p) const {
  return first_level_[p] >= 0 ? LevelValue(first_level_[p]) : past_horizon();
}

LevelValue PlanningGraph::pair_level(AtomId p, AtomId q) const {
  if (!pair_first_.empty()) {
    const std::uint16_t k = pair_first_[static_cast<std::size_t>(p) * num_atoms_ + q];
    return k == kNoPairLevel ? past_horizon() : LevelValue(k);
  }
  // still under construction: search the mutex layers directly
  const LevelValue lp = lev(p);
  if (p == q) return lp;
  const LevelValue m = std::max(lp, lev(q));
  if (m.is_infinite() || m.value() > horizon()) return m;
  int lo = m.value();
  int hi = horizon();
  if (prop_mutex_[hi].test(p, q)) return past_horizon();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (prop_mutex_[mid].test(p, q))
      lo = mid + 1;
    else
      hi = mid;
  }
  return LevelValue(lo);
}

LevelValue PlanningGraph::lev(const AtomSet &s) const {
  LevelValue out(0);
  for (AtomId p : s) out = std::max(out, lev(p));
  if (out.is_infinite()) return out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      out = std::max(out, pair_level(s[i], s[j]));
      if (out.is_infinite()) return out;
    }
  return out;
}

LevelValue PlanningGraph::delta(AtomId p, AtomId q) const {
  if (p == q) return LevelValue(0);
  const LevelValue m = std::max(lev(p), lev(q));
  const LevelValue pl = pair_level(p, q);
  if (m.is_infinite() || pl.is_infinite()) return LevelValue::infinity();
  return LevelValue(pl.value() - m.value());
}

LevelValue PlanningGraph::max_delta(const AtomSet &s) const {
  if (pair_first_.empty()) {
    LevelValue worst(0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) worst = std::max(worst, delta(s[i], s[j]));
    return worst;
  }
  const int past = horizon() + 1;
  // atoms never involved in a mutex contribute delta 0 to every pair
  std::vector<AtomId> atoms;
  std::vector<int> single;
  for (AtomId p : s) {
    const int l = first_level_[p];
    if (l < 0 && leveled_off_) return LevelValue::infinity();
    if (mutex_free_[p] && l >= 0) continue;
    atoms.push_back(p);
    single.push_back(l < 0 ? past : l);
  }
  int worst = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::uint16_t *row = &pair_first_[static_cast<std::size_t>(atoms[i]) * num_atoms_];
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      int k = row[atoms[j]];
      if (k == kNoPairLevel) {
        if (leveled_off_) return LevelValue::infinity();
        k = past;
      }
      worst = std::max(worst, k - std::max(single[i], single[j]));
    }
  }
  return LevelValue(worst);
}

std::string PlanningGraph::dump(const PlanningTask &task) const {
  std::ostringstream os;
  os << "planning graph (" << (mode_ == GraphMode::Serial ? "serial" : "parallel") << ", "
     << (leveled_off_ ? "leveled off" : "truncated") << ", horizon " << horizon() << ")\n";
  for (int k = 0; k <= horizon(); ++k) {
    os << "level " << k << ": " << prop_layers_[k].count() << " props, " << prop_mutex_[k].count_pairs()
       << " prop mutexes";
    if (k > 0) {
      std::size_t real = 0;
      action_layers_[k].for_each([&](int n) { real += !is_noop(n); });
      os << ", " << real << " actions (+" << action_layers_[k].count() - real << " noops), "
         << action_mutex_[k].count_pairs() << " action mutexes";
    }
    os << "\n  props:";
    prop_layers_[k].for_each([&](int p) { os << ' ' << task.atom_name(p); });
    if (k > 0) {
      os << "\n  actions:";
      action_layers_[k].for_each([&](int n) {
        if (!is_noop(n)) os << ' ' << task.actions[n].name;
      });
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace parplan
