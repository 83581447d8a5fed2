#include "chromroots/harness.hpp"
#include "chromroots/bottleneck.hpp"
#include "chromroots/chromatic.hpp"
#include "chromroots/enumerate.hpp"
#include "chromroots/graph6.hpp"
#include "chromroots/homexpand.hpp"
#include "chromroots/matching.hpp"
#include "chromroots/measures.hpp"
#include "chromroots/parallel.hpp"
#include "chromroots/semicircle.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef CHROMROOTS_VERSION
#define CHROMROOTS_VERSION "0.0.0"
#endif

namespace chromroots {

namespace {

constexpr int kCsvSchemaVersion = 1;
constexpr std::size_t kVerifyBatch = 512;

int to_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer for " + what + ": '" + s + "'");
  return v;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("bad number for " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string str(int v) { return std::to_string(v); }
std::string str(std::size_t v) { return std::to_string(v); }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed for " + path);
}

void write_atomic(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  write_file(tmp, body);
  std::filesystem::rename(tmp, path);
}

IntPolynomial polynomial_for(const Graph& g, PolyKind kind) {
  switch (kind) {
    case PolyKind::chromatic: return chromatic_poly(g);
    case PolyKind::matching: return matching_poly(g);
    case PolyKind::modified: return modified_matching_poly(g);
  }
  throw std::logic_error("unknown polynomial kind");
}

std::string poly_name(PolyKind k) {
  switch (k) {
    case PolyKind::chromatic: return "chromatic";
    case PolyKind::matching: return "matching";
    case PolyKind::modified: return "modified";
  }
  return "?";
}

std::string rescale_name(RescaleKind k) {
  switch (k) {
    case RescaleKind::none: return "none";
    case RescaleKind::n: return "n";
    case RescaleKind::sqrt_n: return "sqrt-n";
  }
  return "?";
}

void root_rows(CsvTable& t, const RootSet& rs, double scale, const std::vector<std::string>& prefix) {
  for (const auto& r : rs.roots) {
    auto row = prefix;
    const Complex z = r.z / scale;
    row.push_back(format_double(z.real()));
    row.push_back(format_double(z.imag()));
    row.push_back(str(r.multiplicity));
    t.rows.push_back(std::move(row));
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

std::string software_version() { return CHROMROOTS_VERSION; }

std::string CsvTable::body() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

const CsvTable& ExperimentResult::table(const std::string& suffix) const {
  for (const auto& t : tables)
    if (t.suffix == suffix) return t;
  throw std::out_of_range("no table '" + suffix + "' in " + command);
}

std::string format_double(double x) {
  if (x == 0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

Graph parse_generator(const std::string& spec, const RngSpec& rng) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("generator spec needs name:params, got '" + spec + "'");
  const std::string name = spec.substr(0, colon);
  const auto params = split(spec.substr(colon + 1), ',');
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("generator '" + name + "' takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "complete" || name == "empty" || name == "path" || name == "cycle" || name == "star") {
    need(1);
    const int n = to_int(params[0], name);
    if (n < 1) throw std::invalid_argument("generator order must be positive");
    if (name == "complete") return gen_complete(n);
    if (name == "empty") return gen_empty(n);
    if (name == "path") return gen_path(n);
    if (name == "cycle") return gen_cycle(n);
    return gen_complete_bipartite(1, n - 1);
  }
  if (name == "bipartite") {
    need(2);
    return gen_complete_bipartite(to_int(params[0], name), to_int(params[1], name));
  }
  if (name == "er") {
    need(2);
    return gen_er(to_int(params[0], name), to_double(params[1], name), rng);
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& spec) {
  std::vector<std::pair<int, int>> out;
  if (spec.empty()) return out;
  for (const auto& item : split(spec, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("edge '" + item + "' is not of the form i-j");
    out.emplace_back(to_int(item.substr(0, dash), "edge"), to_int(item.substr(dash + 1), "edge"));
  }
  return out;
}

PolyKind parse_poly_kind(const std::string& s) {
  if (s == "chromatic") return PolyKind::chromatic;
  if (s == "matching") return PolyKind::matching;
  if (s == "modified") return PolyKind::modified;
  throw std::invalid_argument("unknown polynomial kind '" + s + "'");
}

RescaleKind parse_rescale_kind(const std::string& s) {
  if (s == "none") return RescaleKind::none;
  if (s == "n") return RescaleKind::n;
  if (s == "sqrt-n") return RescaleKind::sqrt_n;
  throw std::invalid_argument("unknown rescale '" + s + "'");
}

ExperimentResult cmd_roots(const RootsArgs& args, const CommonOptions& opts) {
  const Graph& g = args.graph;
  if (g.order() < 1) throw std::invalid_argument("roots needs a nonempty graph");
  const IntPolynomial poly = polynomial_for(g, args.poly);
  const RootSet rs = find_roots(poly, opts.root_options());
  const double n = g.order();
  const double scale = args.rescale == RescaleKind::none ? 1.0 : args.rescale == RescaleKind::n ? n : std::sqrt(n);

  ExperimentResult r;
  r.command = "roots";
  CsvTable roots{"", {"re", "im", "multiplicity"}, {}};
  root_rows(roots, rs, scale, {});
  const RootMeasure m = rescale(measure_from_roots(rs, poly_name(args.poly)), scale);
  CsvTable moments{"moments", {"k", "re", "im"}, {}};
  for (int k = 0; k <= 8; ++k) {
    const Complex v = holomorphic_moment(m, k);
    moments.rows.push_back({str(k), format_double(v.real()), format_double(v.imag())});
  }
  r.tables = {std::move(roots), std::move(moments)};

  Complex sum = 0;
  for (const auto& z : rs.points()) sum += z;
  const double expected_sum = poly.degree() >= 1 ? -to_double(Rational(poly.coeff(poly.degree() - 1), poly.leading())) : 0.0;
  r.summary = {{"source", args.source},
               {"graph6", write_graph6(g)},
               {"order", g.order()},
               {"edges", g.edge_count()},
               {"poly", poly_name(args.poly)},
               {"rescale", rescale_name(args.rescale)},
               {"scale", scale},
               {"degree", poly.degree()},
               {"residualBound", rs.residual_bound},
               {"errorBound", rs.error_bound},
               {"method", rs.method},
               {"tol", rs.tol},
               {"root_sum_error", std::abs(sum - Complex(expected_sum))}};
  if (args.poly != PolyKind::chromatic) {
    try {
      certify_real(rs, opts.tol_imag);
      r.summary["real_certified"] = true;
    } catch (const NonRealRootError& e) {
      r.summary["real_certified"] = false;
      r.violations.push_back(e.what());
      r.exit_code = 1;
    }
  }
  return r;
}

namespace {

struct GraphCheck {
  double max_modulus = 0;
  nlohmann::json violations = nlohmann::json::array();
};

GraphCheck check_conjecture(const Graph& g, double slack, const CommonOptions& opts) {
  thread_local ChromaticCache cache(1U << 14);
  ChromaticOptions co;
  co.cache = &cache;
  const RootSet rs = find_roots(chromatic_poly(g, co), opts.root_options());
  const double bound = g.order() - 1.0;
  GraphCheck c;
  auto record = [&](const char* kind, Complex z) {
    c.violations.push_back({{"graph6", write_graph6(g)},
                            {"kind", kind},
                            {"re", z.real()},
                            {"im", z.imag()},
                            {"residual", rs.residual_bound}});
  };
  for (const auto& root : rs.roots) {
    const Complex z = root.z;
    c.max_modulus = std::max(c.max_modulus, std::abs(z));
    if (std::abs(z) > bound + slack) record("modulus", z);
    const bool real = std::abs(z.imag()) <= opts.tol_imag * (1.0 + std::abs(z));
    if (real && z.real() > bound + slack) record("real_above_bound", z);
    if (real && z.real() < -slack) record("negative_real", z);
  }
  return c;
}

struct VerifyState {
  std::string source;
  double slack = 0;
  std::size_t next_unit = 0;
  std::size_t processed = 0;
  double max_modulus = -1;
  std::string extremal;
  nlohmann::json violations = nlohmann::json::array();
  bool complete = false;

  nlohmann::json to_json() const {
    return {{"version", software_version()}, {"source", source},   {"slack", slack},
            {"next_unit", next_unit},        {"processed", processed}, {"max_modulus", max_modulus},
            {"extremal_graph6", extremal},   {"violations", violations}, {"complete", complete}};
  }
};

}  // namespace

ExperimentResult cmd_verify_conjecture(const VerifyArgs& args, const CommonOptions& opts) {
  std::vector<Graph> file_graphs;
  VerifyState st;
  st.slack = args.slack;
  if (args.from_file) {
    file_graphs = read_graph6_file(*args.from_file);
    st.source = "file:" + *args.from_file;
  } else {
    if (args.n < 1 || args.n > kEnumerateMaxOrder) throw std::invalid_argument("verify-conjecture needs 1 <= n <= 10");
    if (args.n >= 9 && !args.allow_long)
      throw std::invalid_argument("n >= 9 runs are long (n=9: minutes to an hour, n=10: hours); pass --allow-long");
    st.source = "enumerate:" + std::to_string(args.n);
  }

  if (args.checkpoint && std::filesystem::exists(*args.checkpoint)) {
    std::ifstream in(*args.checkpoint);
    const auto j = nlohmann::json::parse(in);
    if (j.at("source").get<std::string>() != st.source || j.at("slack").get<double>() != st.slack)
      throw std::invalid_argument("checkpoint " + *args.checkpoint + " belongs to a different run");
    st.next_unit = j.at("next_unit").get<std::size_t>();
    st.processed = j.at("processed").get<std::size_t>();
    st.max_modulus = j.at("max_modulus").get<double>();
    st.extremal = j.at("extremal_graph6").get<std::string>();
    st.violations = j.at("violations");
    st.complete = j.at("complete").get<bool>();
  }

  std::vector<Graph> pending;
  std::size_t units_this_run = 0;
  auto flush = [&](std::size_t next_unit) {
    const auto checks = parallel_map(pending.size(), opts.workers,
                                     [&](std::size_t i) { return check_conjecture(pending[i], args.slack, opts); });
    for (std::size_t i = 0; i < pending.size(); ++i) {
      ++st.processed;
      if (checks[i].max_modulus > st.max_modulus) {
        st.max_modulus = checks[i].max_modulus;
        st.extremal = write_graph6(pending[i]);
      }
      for (const auto& v : checks[i].violations) st.violations.push_back(v);
    }
    pending.clear();
    st.next_unit = next_unit;
    if (args.checkpoint) write_atomic(*args.checkpoint, st.to_json().dump(2) + "\n");
  };
  auto stop_requested = [&] { return args.stop_after && units_this_run >= *args.stop_after; };

  if (!st.complete) {
    bool stopped = false;
    std::size_t total_units = file_graphs.size();
    if (args.from_file) {
      for (std::size_t i = st.next_unit; i < file_graphs.size(); ++i) {
        pending.push_back(file_graphs[i]);
        ++units_this_run;
        if (pending.size() >= kVerifyBatch || stop_requested()) flush(i + 1);
        if (stop_requested() && i + 1 < file_graphs.size()) {
          stopped = true;
          break;
        }
      }
    } else {
      ConnectedStream stream(args.n, opts.workers);
      total_units = stream.parent_count();
      stream.visit(st.next_unit, [&](std::size_t parent, std::span<const Graph> children) {
        pending.insert(pending.end(), children.begin(), children.end());
        ++units_this_run;
        if (pending.size() >= kVerifyBatch || stop_requested()) flush(parent + 1);
        if (stop_requested() && parent + 1 < stream.parent_count()) {
          stopped = true;
          return false;
        }
        return true;
      });
    }
    if (!stopped) {
      st.complete = true;
      flush(total_units);
    }
  }

  ExperimentResult r;
  r.command = "verify-conjecture";
  r.tables.push_back({"",
                      {"source", "graphs", "violations", "max_modulus", "extremal_graph6", "complete"},
                      {{st.source, str(st.processed), str(st.violations.size()), format_double(st.max_modulus),
                        st.extremal, st.complete ? "1" : "0"}}});
  CsvTable vt{"violations", {"graph6", "kind", "re", "im", "residual"}, {}};
  for (const auto& v : st.violations) {
    vt.rows.push_back({v.at("graph6").get<std::string>(), v.at("kind").get<std::string>(),
                       format_double(v.at("re").get<double>()), format_double(v.at("im").get<double>()),
                       format_double(v.at("residual").get<double>())});
    r.violations.push_back(v.dump());
  }
  r.tables.push_back(std::move(vt));
  r.summary = st.to_json();
  r.summary.erase("version");
  r.summary["n"] = args.n;
  r.exit_code = st.violations.empty() ? 0 : 1;
  return r;
}

ExperimentResult cmd_er_chromatic(const ErArgs& args, const CommonOptions& opts) {
  if (args.n < 1 || args.n > 16) throw std::invalid_argument("er-chromatic needs 1 <= n <= 16");
  if (!(args.p >= 0 && args.p <= 1)) throw std::invalid_argument("edge probability outside [0,1]");
  if (args.samples < 1) throw std::invalid_argument("samples must be positive");
  const RngSpec rng = opts.rng();
  struct Sample {
    std::size_t edges = 0;
    RootSet rs;
  };
  const auto samples = parallel_map(static_cast<std::size_t>(args.samples), opts.workers, [&](std::size_t i) {
    const Graph g = gen_er(args.n, args.p, rng.derive(i));
    return Sample{g.edge_count(), find_roots(chromatic_poly(g), opts.root_options())};
  });

  ExperimentResult r;
  r.command = "er-chromatic";
  CsvTable pts{"", {"sample", "edges", "re", "im", "multiplicity"}, {}};
  constexpr int kMaxMoment = 8;
  std::vector<std::vector<Complex>> mom(kMaxMoment + 1);
  double max_mod = 0, edge_sum = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    root_rows(pts, samples[i].rs, args.n, {str(i), str(samples[i].edges)});
    const RootMeasure nu = rescale(measure_from_roots(samples[i].rs, "chromatic"), args.n);
    for (const auto& z : nu.points) max_mod = std::max(max_mod, std::abs(z));
    for (int k = 0; k <= kMaxMoment; ++k) mom[k].push_back(holomorphic_moment(nu, k));
    edge_sum += samples[i].edges;
  }
  CsvTable mt{"moments", {"k", "mean_re", "mean_im", "variance"}, {}};
  for (int k = 0; k <= kMaxMoment; ++k) {
    Complex mean = 0;
    for (const auto& v : mom[k]) mean += v;
    mean /= static_cast<double>(mom[k].size());
    double var = 0;
    for (const auto& v : mom[k]) var += std::norm(v - mean);
    var = mom[k].size() > 1 ? var / static_cast<double>(mom[k].size() - 1) : 0.0;
    mt.rows.push_back({str(k), format_double(mean.real()), format_double(mean.imag()), format_double(var)});
  }
  r.tables = {std::move(pts), std::move(mt)};
  const double nn = static_cast<double>(args.n) * args.n;
  r.summary = {{"n", args.n},
               {"p", args.p},
               {"samples", args.samples},
               {"max_modulus", max_mod},
               {"support_ok", max_mod <= 8.0 + opts.tol_root},
               {"mean_edges", edge_sum / args.samples},
               {"mean_first_moment", edge_sum / args.samples / nn},
               {"expected_first_moment", args.p * args.n * (args.n - 1) / 2.0 / nn}};
  if (max_mod > 8.0 + opts.tol_root) {
    r.violations.push_back("rescaled root outside the disk of radius 8");
    r.exit_code = 1;
  }
  return r;
}

ExperimentResult cmd_matching_semicircle(const SemicircleArgs& args, const CommonOptions& opts) {
  if (args.ns.empty()) throw std::invalid_argument("matching-semicircle needs at least one n");
  if (args.samples < 1) throw std::invalid_argument("samples must be positive");
  const SemicircleRef ref(args.p);
  const RngSpec rng = opts.rng();
  ExperimentResult r;
  r.command = "matching-semicircle";
  CsvTable summary{"",
                   {"n", "p", "samples", "mean_ks", "mean_m2", "mean_m4", "mean_m6", "sc_m2", "sc_m4", "sc_m6",
                    "ratio_m1", "ratio_m2", "ratio_m3", "ratio_m4"},
                   {}};
  CsvTable detail{"samples", {"n", "sample", "edges", "ks"}, {}};
  struct Sample {
    std::size_t edges = 0;
    double ks = 0;
    double even[3] = {0, 0, 0};
    double ratio[4] = {0, 0, 0, 0};
  };
  for (int n : args.ns) {
    if (n < 2 || n > 26) throw std::invalid_argument("matching-semicircle needs 2 <= n <= 26");
    const MatchingCounts full = complete_matching_counts(n);
    const RngSpec stream = rng.derive(static_cast<std::uint64_t>(n));
    const auto samples = parallel_map(static_cast<std::size_t>(args.samples), opts.workers, [&](std::size_t i) {
      const Graph g = gen_er(n, args.p, stream.derive(i));
      const MatchingCounts mc = matching_counts(g);
      const auto real = certify_real(find_roots(matching_poly(mc), opts.root_options()), opts.tol_imag);
      std::vector<double> lambda;
      for (double x : real) lambda.push_back(x / std::sqrt(static_cast<double>(n)));
      Sample s;
      s.edges = g.edge_count();
      s.ks = ks_distance(lambda, ref);
      for (int k = 1; k <= 3; ++k) {
        double acc = 0;
        for (double x : lambda) acc += std::pow(x, 2 * k);
        s.even[k - 1] = acc / static_cast<double>(lambda.size());
      }
      for (int k = 1; k <= 4; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        s.ratio[k - 1] = kk < mc.m.size() ? to_double(Rational(mc.m[kk], full.m[kk])) : 0.0;
      }
      return s;
    });
    double ks = 0, even[3] = {0, 0, 0}, ratio[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      detail.rows.push_back({str(n), str(i), str(s.edges), format_double(s.ks)});
      ks += s.ks;
      for (int k = 0; k < 3; ++k) even[k] += s.even[k];
      for (int k = 0; k < 4; ++k) ratio[k] += s.ratio[k];
    }
    const double cnt = args.samples;
    std::vector<std::string> row{str(n), format_double(args.p), str(args.samples), format_double(ks / cnt)};
    for (double e : even) row.push_back(format_double(e / cnt));
    for (int k = 1; k <= 3; ++k) row.push_back(format_double(ref.moment(2 * k)));
    for (double q : ratio) row.push_back(format_double(q / cnt));
    summary.rows.push_back(std::move(row));
  }
  r.tables = {std::move(summary), std::move(detail)};
  r.summary = {{"p", args.p}, {"samples", args.samples}, {"ns", args.ns}};
  return r;
}

ExperimentResult cmd_coloring_rate(const ColoringRateArgs& args, const CommonOptions& opts) {
  if (args.n_min < 1 || args.n_max < args.n_min) throw std::invalid_argument("bad n range");
  if (!(args.c > 8.0) && !args.force) throw std::invalid_argument("coloring-rate requires C > 8 (use --force)");
  std::optional<double> er_p;
  if (args.sequence.rfind("er:", 0) == 0) er_p = to_double(args.sequence.substr(3), "er sequence");
  else if (args.sequence != "complete" && args.sequence != "empty" && args.sequence != "path" && args.sequence != "cycle")
    throw std::invalid_argument("unknown sequence '" + args.sequence + "'");
  if (args.sequence == "cycle" && args.n_min < 3) throw std::invalid_argument("cycle sequence needs n >= 3");

  const RngSpec rng = opts.rng();
  const std::size_t count = static_cast<std::size_t>(args.n_max - args.n_min + 1);
  const auto rates = parallel_map(count, opts.workers, [&](std::size_t i) {
    const int n = args.n_min + static_cast<int>(i);
    Graph g = er_p                           ? gen_er(n, *er_p, rng.derive(static_cast<std::uint64_t>(n)))
              : args.sequence == "complete" ? gen_complete(n)
              : args.sequence == "empty"    ? gen_empty(n)
              : args.sequence == "path"     ? gen_path(n)
                                            : gen_cycle(n);
    return coloring_rate(g, args.c, args.force);
  });
  ExperimentResult r;
  r.command = "coloring-rate";
  CsvTable t{"", {"n", "a_n", "limit"}, {}};
  const bool complete = args.sequence == "complete";
  const double limit = complete_graph_rate_limit(args.c);
  for (std::size_t i = 0; i < count; ++i)
    t.rows.push_back({str(args.n_min + static_cast<int>(i)), format_double(rates[i]), complete ? format_double(limit) : ""});
  r.tables.push_back(std::move(t));
  r.summary = {{"sequence", args.sequence}, {"C", args.c}, {"n_min", args.n_min}, {"n_max", args.n_max}};
  if (complete) r.summary["limit"] = limit;
  return r;
}

ExperimentResult cmd_perturb(const PerturbArgs& args, const CommonOptions& opts) {
  ExperimentResult r;
  r.command = "perturb";
  auto roots_of = [&](const Graph& g) { return measure_from_roots(find_roots(chromatic_poly(g), opts.root_options()), "chromatic"); };

  if (args.batch_n == 0) {
    if (!args.graph) throw std::invalid_argument("perturb needs a graph or --batch-n");
    const EdgeAddition ea = add_edges(*args.graph, args.add_edges);
    if (args.delta && ea.max_increase() > *args.delta && !args.force)
      throw std::invalid_argument("degree increase " + std::to_string(ea.max_increase()) + " exceeds delta " +
                                  std::to_string(*args.delta) + " (use --force)");
    const RootMeasure a = roots_of(*args.graph);
    const RootMeasure b = roots_of(ea.graph);
    const BottleneckResult br = bottleneck_displacement(a, b);
    std::string added;
    for (const auto& [u, v] : args.add_edges) added += (added.empty() ? "" : " ") + str(u) + "-" + str(v);
    r.tables.push_back({"",
                        {"graph6", "added", "max_degree_increase", "displacement"},
                        {{write_graph6(*args.graph), added, str(ea.max_increase()), format_double(br.value)}}});
    CsvTable at{"assignment", {"re", "im", "matched_re", "matched_im"}, {}};
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      const Complex w = b.points[static_cast<std::size_t>(br.assignment[i])];
      at.rows.push_back({format_double(a.points[i].real()), format_double(a.points[i].imag()), format_double(w.real()),
                         format_double(w.imag())});
    }
    r.tables.push_back(std::move(at));
    r.summary = {{"displacement", br.value}, {"max_degree_increase", ea.max_increase()}};
    return r;
  }

  if (args.batch_n < 2 || args.batch_n > 8) throw std::invalid_argument("perturb batch mode needs 2 <= n <= 8");
  const auto graphs = enumerate_connected(args.batch_n, opts.workers);
  struct Task {
    std::size_t graph;
    int u, v;
  };
  std::vector<Task> tasks;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (int v = 1; v < args.batch_n; ++v)
      for (int u = 0; u < v; ++u)
        if (!graphs[gi].has_edge(u, v)) tasks.push_back({gi, u, v});
  if (args.samples > 0 && static_cast<std::size_t>(args.samples) < tasks.size()) {
    auto eng = engine_for(opts.rng());
    for (std::size_t i = 0; i < static_cast<std::size_t>(args.samples); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform01(eng) * static_cast<double>(tasks.size() - i));
      std::swap(tasks[i], tasks[j]);
    }
    tasks.resize(static_cast<std::size_t>(args.samples));
    std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
      return std::tie(a.graph, a.v, a.u) < std::tie(b.graph, b.v, b.u);
    });
  }
  const auto base = parallel_map(graphs.size(), opts.workers, [&](std::size_t i) { return roots_of(graphs[i]); });
  const auto disp = parallel_map(tasks.size(), opts.workers, [&](std::size_t i) {
    const std::pair<int, int> e{tasks[i].u, tasks[i].v};
    return bottleneck_displacement(base[tasks[i].graph], roots_of(add_edges(graphs[tasks[i].graph], {&e, 1}).graph)).value;
  });
  CsvTable t{"", {"graph6", "u", "v", "displacement"}, {}};
  double best = 0;
  std::string best_g;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string code = write_graph6(graphs[tasks[i].graph]);
    t.rows.push_back({code, str(tasks[i].u), str(tasks[i].v), format_double(disp[i])});
    if (disp[i] > best) {
      best = disp[i];
      best_g = code + " +" + str(tasks[i].u) + "-" + str(tasks[i].v);
    }
  }
  r.tables.push_back(std::move(t));
  r.summary = {{"batch_n", args.batch_n}, {"additions", tasks.size()}, {"max_displacement", best}, {"argmax", best_g}};
  return r;
}

ExperimentResult cmd_derive_ck(const DeriveArgs& args, const CommonOptions& opts) {
  if (args.k < 1 || args.k > kExpansionMaxK) throw std::invalid_argument("derive-ck needs 1 <= k <= 4");
  const RngSpec rng = opts.rng();
  const auto samples = default_solve_samples(args.k, rng);
  const HomExpansion e = solve_ck(args.k, samples);
  const auto holdout = holdout_graphs(args.holdout, rng, samples);
  const VerificationReport rep = verify_expansion(e, holdout);

  ExperimentResult r;
  r.command = "derive-ck";
  CsvTable t{"", {"graph6", "order", "edges", "c"}, {}};
  for (const auto& term : e.terms)
    t.rows.push_back({term.graph6, str(term.graph.order()), str(term.graph.edge_count()), to_fraction_string(term.c)});
  r.tables.push_back(std::move(t));
  r.json_files.emplace_back("expansion", to_json(e));
  r.summary = {{"k", args.k},
               {"samples", samples.size()},
               {"holdout", rep.checked},
               {"pass", rep.pass},
               {"failures", rep.failures}};
  r.violations = rep.failures;
  r.exit_code = rep.pass ? 0 : 1;
  return r;
}

nlohmann::json make_sidecar(const ExperimentResult& r, const CommonOptions& opts, const RunInfo& info,
                            const std::vector<std::string>& files) {
  return {{"version", software_version()},
          {"csv_schema_version", kCsvSchemaVersion},
          {"command", r.command},
          {"command_line", info.command_line},
          {"seed", opts.seed},
          {"rng_algorithm", opts.rng().algorithm_id},
          {"tol_root", opts.tol_root},
          {"tol_imag", opts.tol_imag},
          {"workers", opts.workers},
          {"wall_time_s", info.wall_time_s},
          {"exit_code", r.exit_code},
          {"files", files},
          {"summary", r.summary}};
}

std::vector<std::string> sidecar_missing_keys(const nlohmann::json& meta) {
  static const char* kRequired[] = {"version", "csv_schema_version", "command", "command_line", "seed",
                                    "rng_algorithm", "tol_root", "tol_imag", "workers", "wall_time_s",
                                    "files", "summary"};
  std::vector<std::string> out;
  for (const char* k : kRequired)
    if (!meta.is_object() || !meta.contains(k)) out.emplace_back(k);
  return out;
}

std::string default_stem(const std::string& command) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  std::string name = command;
  std::replace(name.begin(), name.end(), '-', '_');
  return name + "_" + buf;
}

std::vector<std::string> write_result(const ExperimentResult& r, const CommonOptions& opts, const RunInfo& info,
                                      const std::string& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (const auto& t : r.tables) {
    const std::string path = (std::filesystem::path(dir) / (stem + (t.suffix.empty() ? "" : "_" + t.suffix) + ".csv")).string();
    write_file(path, t.body());
    files.push_back(path);
  }
  for (const auto& [suffix, j] : r.json_files) {
    const std::string path = (std::filesystem::path(dir) / (stem + "_" + suffix + ".json")).string();
    write_file(path, j.dump(2) + "\n");
    files.push_back(path);
  }
  const std::string meta = (std::filesystem::path(dir) / (stem + ".meta.json")).string();
  write_file(meta, make_sidecar(r, opts, info, files).dump(2) + "\n");
  files.push_back(meta);
  return files;
}

}  // namespace chromroots
