#pragma once

#include "chromroots/graph.hpp"
#include "chromroots/roots.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chromroots {

std::string software_version();

struct CsvTable {
  /// Empty for the primary table (<stem>.csv), otherwise <stem>_<suffix>.csv.
  std::string suffix;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string body() const;
};

struct ExperimentResult {
  std::string command;
  std::vector<CsvTable> tables;
  /// Extra JSON artifacts written as <stem>_<suffix>.json.
  std::vector<std::pair<std::string, nlohmann::json>> json_files;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> violations;
  int exit_code = 0;

  const CsvTable& table(const std::string& suffix) const;
};

struct CommonOptions {
  int workers = 1;
  std::uint64_t seed = 0;
  double tol_root = kDefaultRootTol;
  double tol_imag = kDefaultImagTol;

  RngSpec rng() const { return RngSpec{seed}; }
  RootOptions root_options() const { return RootOptions{tol_root}; }
};

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// complete:N, empty:N, path:N, cycle:N, star:N, bipartite:A,B, er:N,P.
Graph parse_generator(const std::string& spec, const RngSpec& rng);
/// "0-1,2-3" -> {(0,1), (2,3)}
std::vector<std::pair<int, int>> parse_edge_list(const std::string& spec);

enum class PolyKind { chromatic, matching, modified };
enum class RescaleKind { none, n, sqrt_n };
PolyKind parse_poly_kind(const std::string& s);
RescaleKind parse_rescale_kind(const std::string& s);

struct RootsArgs {
  Graph graph{0};
  std::string source;
  PolyKind poly = PolyKind::chromatic;
  RescaleKind rescale = RescaleKind::none;
};
ExperimentResult cmd_roots(const RootsArgs& args, const CommonOptions& opts);

struct VerifyArgs {
  int n = 0;
  double slack = 1e-6;
  /// Graphs read from a graph6 file instead of the enumeration stream.
  std::optional<std::string> from_file;
  std::optional<std::string> checkpoint;
  /// Stop after this many stream units (parents, or file lines); for
  /// interrupted runs.
  std::optional<std::size_t> stop_after;
  /// n = 9 and n = 10 need explicit opt-in.
  bool allow_long = false;
};
ExperimentResult cmd_verify_conjecture(const VerifyArgs& args, const CommonOptions& opts);

struct ErArgs {
  int n = 10;
  double p = 0.5;
  int samples = 100;
};
ExperimentResult cmd_er_chromatic(const ErArgs& args, const CommonOptions& opts);

struct SemicircleArgs {
  std::vector<int> ns;
  double p = 0.5;
  int samples = 20;
};
ExperimentResult cmd_matching_semicircle(const SemicircleArgs& args, const CommonOptions& opts);

struct ColoringRateArgs {
  /// complete, empty, path, cycle, or er:P
  std::string sequence = "complete";
  double c = 9.0;
  int n_min = 1;
  int n_max = 30;
  bool force = false;
};
ExperimentResult cmd_coloring_rate(const ColoringRateArgs& args, const CommonOptions& opts);

struct PerturbArgs {
  std::optional<Graph> graph;
  std::vector<std::pair<int, int>> add_edges;
  /// Largest allowed per-vertex degree increase; unchecked when absent.
  std::optional<int> delta;
  bool force = false;
  /// Batch mode: every single-edge addition to every connected graph of this order.
  int batch_n = 0;
  /// In batch mode, a seeded subsample of this many additions (0 = all).
  int samples = 0;
};
ExperimentResult cmd_perturb(const PerturbArgs& args, const CommonOptions& opts);

struct DeriveArgs {
  int k = 1;
  int holdout = 50;
};
ExperimentResult cmd_derive_ck(const DeriveArgs& args, const CommonOptions& opts);

struct RunInfo {
  std::string command_line;
  double wall_time_s = 0.0;
};

nlohmann::json make_sidecar(const ExperimentResult& r, const CommonOptions& opts, const RunInfo& info,
                            const std::vector<std::string>& files);
/// Keys required in every sidecar that are absent from `meta`.
std::vector<std::string> sidecar_missing_keys(const nlohmann::json& meta);

/// <command>_<UTC timestamp>
std::string default_stem(const std::string& command);
/// Writes every table and JSON artifact plus <stem>.meta.json into `dir`;
/// returns the paths written.
std::vector<std::string> write_result(const ExperimentResult& r, const CommonOptions& opts, const RunInfo& info,
                                      const std::string& dir, const std::string& stem);

}  // namespace chromroots
