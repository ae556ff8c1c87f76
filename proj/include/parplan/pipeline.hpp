#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parplan/planning_graph.hpp"
#include "parplan/search.hpp"
#include "parplan/task.hpp"
#include "parplan/validator.hpp"

namespace parplan {

// Defaults with budgets overridden by PARPLAN_NODE_BUDGET and
// PARPLAN_TIME_BUDGET when those are set.
SearchConfig default_config();

// Applies one command-line style option ("graph", "fatten", "pushup",
// "weight", "stop", "node-budget", "time-budget", "trace") to config.
// Throws std::invalid_argument on an unknown name or bad value.
void apply_option(SearchConfig &config, const std::string &name, const std::string &value);

// Parses "--name value", "--name=value" and a bare "--trace".
SearchConfig parse_options(const std::vector<std::string> &args, SearchConfig base = default_config());

// Short stable description of the plan-affecting settings.
std::string fingerprint(const SearchConfig &config);

std::string to_string(GraphMode m);
std::string to_string(PushupMode m);

struct RunRecord {
  std::string domain;
  std::string problem;
  std::string config;
  std::string outcome;  // solved | exhausted | budget | invalid-input
  std::optional<int> makespan;
  std::optional<int> actions;
  long expansions = 0;
  double wall_time = 0.0;
  std::string message;  // error text for invalid-input rows
};

struct Solution {
  PlanningTask task;
  GroundingReport grounding;
  SearchResult search;
  std::optional<ValidationReport> validation;  // present when solved
  RunRecord record;
};

// Parse, ground, build the graph, search and validate.  Input errors become
// an invalid-input record rather than an exception.  A solved plan that
// fails validation raises std::logic_error.
Solution solve_files(const std::string &domain_path, const std::string &problem_path, const SearchConfig &config);
Solution solve_text(const std::string &domain_text, const std::string &problem_text, const SearchConfig &config);

struct ManifestRow {
  std::string domain_path;
  std::string problem_path;
  std::vector<std::string> flags;
};

// "<domain> <problem> [flags...]" per line; '#' starts a comment.  Relative
// paths are resolved against base_dir.
std::vector<ManifestRow> parse_manifest(const std::string &text, const std::string &base_dir);

std::string csv_header();
std::string csv_row(const RunRecord &r);
void run_manifest(const std::vector<ManifestRow> &rows, std::ostream &csv, const SearchConfig &base = default_config());

}  // namespace parplan
