#include "chromroots/graph6.hpp"
#include "chromroots/harness.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iostream>

using namespace chromroots;

namespace {

struct Output {
  std::string dir = ".";
  std::string stem;
  bool quiet = false;
};

int finish(const ExperimentResult& r, const CommonOptions& opts, const Output& out, const std::string& command_line,
           std::chrono::steady_clock::time_point start) {
  RunInfo info{command_line, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
  const auto files = write_result(r, opts, info, out.dir, out.stem.empty() ? default_stem(r.command) : out.stem);
  if (!out.quiet) {
    std::cout << r.summary.dump(2) << "\n";
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
  }
  for (const auto& v : r.violations) std::cerr << "violation: " << v << "\n";
  return r.exit_code;
}

Graph graph_source(const std::string& graph6, const std::string& gen, const CommonOptions& opts) {
  if (!graph6.empty() && !gen.empty()) throw CLI::ValidationError("--graph6 and --gen are mutually exclusive");
  if (!graph6.empty()) return parse_graph6(graph6);
  if (!gen.empty()) return parse_generator(gen, opts.rng());
  throw CLI::ValidationError("a graph source (--graph6 or --gen) is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic and matching roots of graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", software_version());

  CommonOptions opts;
  Output out;
  app.add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out.dir, "Output directory");
  app.add_option("--stem", out.stem, "Output file stem (default <cmd>_<timestamp>)");
  app.add_option("--seed", opts.seed, "RNG seed");
  app.add_option("--tol-root", opts.tol_root, "Root isolation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-imag", opts.tol_imag, "Imaginary-part tolerance for real roots")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", out.quiet, "Do not print the summary");

  std::string graph6, gen, poly = "chromatic", rescale = "none";
  auto* roots = app.add_subcommand("roots", "Roots of a graph polynomial, with moments");
  roots->add_option("--graph6", graph6, "Graph in graph6");
  roots->add_option("--gen", gen, "Generator: complete:N empty:N path:N cycle:N star:N bipartite:A,B er:N,P");
  roots->add_option("--poly", poly, "chromatic | matching | modified")
      ->check(CLI::IsMember({"chromatic", "matching", "modified"}));
  roots->add_option("--rescale", rescale, "none | n | sqrt-n")->check(CLI::IsMember({"none", "n", "sqrt-n"}));

  VerifyArgs va;
  std::string from_file, checkpoint;
  std::size_t stop_after = 0;
  auto* verify = app.add_subcommand("verify-conjecture", "Check |root| <= n-1 over all connected graphs of order n");
  verify->add_option("--n", va.n, "Order")->check(CLI::Range(1, 10));
  verify->add_option("--slack", va.slack, "Slack on the bound");
  verify->add_option("--from-file", from_file, "Read graphs from a graph6 file instead");
  verify->add_option("--checkpoint", checkpoint, "Checkpoint JSON (resumed if present)");
  verify->add_option("--stop-after", stop_after, "Stop after this many stream units");
  verify->add_flag("--allow-long", va.allow_long, "Permit n = 9 and n = 10");

  ErArgs ea;
  auto* er = app.add_subcommand("er-chromatic", "Rescaled chromatic roots of G(n,p) samples");
  er->add_option("--n", ea.n)->check(CLI::Range(1, 16));
  er->add_option("--p", ea.p)->check(CLI::Range(0.0, 1.0));
  er->add_option("--samples", ea.samples)->check(CLI::PositiveNumber);

  SemicircleArgs sa;
  auto* sc = app.add_subcommand("matching-semicircle", "Matching roots of G(n,p) against the semicircle law");
  sc->add_option("--n", sa.ns, "Orders (repeatable or comma separated)")->delimiter(',')->required();
  sc->add_option("--p", sa.p)->check(CLI::Range(0.0, 1.0));
  sc->add_option("--samples", sa.samples)->check(CLI::PositiveNumber);

  ColoringRateArgs ca;
  std::string n_range = "1:30";
  auto* cr = app.add_subcommand("coloring-rate", "a_n = P(G_n, C n)^(1/n) / n along a sequence");
  cr->add_option("--gen", ca.sequence, "complete | empty | path | cycle | er:P");
  cr->add_option("--C", ca.c, "C");
  cr->add_option("--n-range", n_range, "LO:HI");
  cr->add_flag("--force", ca.force, "Allow C <= 8");

  PerturbArgs pa;
  std::string add_spec;
  int delta = -1;
  auto* pt = app.add_subcommand("perturb", "Bottleneck displacement of chromatic roots after adding edges");
  pt->add_option("--graph6", graph6, "Graph in graph6");
  pt->add_option("--gen", gen, "Generator spec");
  pt->add_option("--add-edges", add_spec, "Edges to add: i-j,k-l");
  pt->add_option("--delta", delta, "Largest allowed degree increase per vertex");
  pt->add_flag("--force", pa.force, "Accept additions exceeding --delta");
  pt->add_option("--batch-n", pa.batch_n, "All single-edge additions over connected graphs of this order");
  pt->add_option("--samples", pa.samples, "Seeded subsample size in batch mode");

  DeriveArgs da;
  auto* dk = app.add_subcommand("derive-ck", "Recover the homomorphism expansion of p_k");
  dk->add_option("--k", da.k)->check(CLI::Range(1, 4));
  dk->add_option("--holdout", da.holdout)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*roots) {
      RootsArgs ra{graph_source(graph6, gen, opts), graph6.empty() ? gen : graph6, parse_poly_kind(poly),
                   parse_rescale_kind(rescale)};
      return finish(cmd_roots(ra, opts), opts, out, command_line, start);
    }
    if (*verify) {
      if (!from_file.empty()) va.from_file = from_file;
      if (!checkpoint.empty()) va.checkpoint = checkpoint;
      if (stop_after > 0) va.stop_after = stop_after;
      if (va.n == 0 && !va.from_file) throw CLI::ValidationError("--n or --from-file is required");
      if (va.n >= 9 && !va.from_file)
        std::cerr << "note: n = " << va.n << " takes " << (va.n == 9 ? "minutes to an hour" : "hours")
                  << " on a desktop\n";
      return finish(cmd_verify_conjecture(va, opts), opts, out, command_line, start);
    }
    if (*er) return finish(cmd_er_chromatic(ea, opts), opts, out, command_line, start);
    if (*sc) return finish(cmd_matching_semicircle(sa, opts), opts, out, command_line, start);
    if (*cr) {
      const auto colon = n_range.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--n-range must be LO:HI");
      ca.n_min = std::stoi(n_range.substr(0, colon));
      ca.n_max = std::stoi(n_range.substr(colon + 1));
      return finish(cmd_coloring_rate(ca, opts), opts, out, command_line, start);
    }
    if (*pt) {
      if (pa.batch_n == 0) pa.graph = graph_source(graph6, gen, opts);
      pa.add_edges = parse_edge_list(add_spec);
      if (delta >= 0) pa.delta = delta;
      return finish(cmd_perturb(pa, opts), opts, out, command_line, start);
    }
    if (*dk) return finish(cmd_derive_ck(da, opts), opts, out, command_line, start);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
