// Batch experiment runner around the vnlab library modules.
//
// Subcommands: sharpness | decompose | lepingle | mpz | nlft | selftest.
// Flags: --config PATH (JSON document), --seed N, --out DIR, --threads N.
// Flags override config-file values.  Every run is deterministic given
// (config, seed): all artifacts are accumulated in memory, written once, and
// hashed into manifest.json.  Wall time goes to run.log, which is not hashed.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vnlab/fit.hpp"
#include "vnlab/grid.hpp"
#include "vnlab/lepingle.hpp"
#include "vnlab/mpz.hpp"
#include "vnlab/nlft.hpp"
#include "vnlab/rng.hpp"
#include "vnlab/sharpness.hpp"
#include "vnlab/timefreq.hpp"
#include "vnlab/treeselect.hpp"
#include "vnlab/variation.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace vnlab;

namespace {

// ---------------------------------------------------------------------------
// Artifact sink: named in-memory files, written + hashed at the end of a run.
// ---------------------------------------------------------------------------

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Artifacts {
  fs::path dir;
  std::map<std::string, std::string> files;  // name -> content (sorted)

  void add(const std::string& name, const std::string& content) { files[name] = content; }

  // Writes all files plus manifest.json (hashes) and run.log (wall time).
  void flush(const json& config_echo, double wall_seconds) {
    fs::create_directories(dir);
    json manifest;
    manifest["config"] = config_echo;
    json hashes = json::object();
    for (const auto& [name, content] : files) {
      std::ofstream out(dir / name, std::ios::binary);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      hashes[name] = "fnv1a64:" + fnv1a64_hex(content);
    }
    manifest["files"] = hashes;
    std::string mtext = manifest.dump(2);
    mtext.push_back('\n');
    manifest["files"]["manifest.json"] = "fnv1a64:" + fnv1a64_hex(mtext);
    // Re-dump so the manifest records its own hash-of-body; the recorded hash
    // covers the manifest without the self-entry, which re-runs can recompute.
    std::string final_text = manifest.dump(2);
    final_text.push_back('\n');
    std::ofstream(dir / "manifest.json", std::ios::binary) << final_text;
    std::ofstream(dir / "run.log") << "wall_seconds " << wall_seconds << "\n";
  }
};

// ---------------------------------------------------------------------------
// Config plumbing.
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string experiment;
  json parameters = json::object();
  fs::path out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;

  json echo() const {
    json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    j["threads"] = threads;
    j["parameters"] = parameters;
    return j;
  }
};

double param(const json& p, const std::string& key, double fallback) {
  if (!p.contains(key)) return fallback;
  const json& v = p.at(key);
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
    return kInf;
  return v.get<double>();
}

long long param_int(const json& p, const std::string& key, long long fallback) {
  return p.contains(key) ? p.at(key).get<long long>() : fallback;
}

// ---------------------------------------------------------------------------
// Shared serialization helpers.
// ---------------------------------------------------------------------------

json dyadic_json(const DyadicInterval& d) { return json{{"k", d.scale}, {"m", d.index}}; }

json multitile_json(const Multitile& p) {
  json j;
  j["I"] = dyadic_json(p.I);
  j["omega_u"] = dyadic_json(p.omega_u);
  j["rho"] = json::array({p.rho.cls, p.rho.m, p.rho.n, p.rho.left_side ? "L" : "R"});
  return j;
}

Multitile multitile_from_json(const json& j) {
  DyadicInterval I{j.at("I").at("k").get<int>(), j.at("I").at("m").get<long long>()};
  DyadicInterval wu{j.at("omega_u").at("k").get<int>(), j.at("omega_u").at("m").get<long long>()};
  const json& r = j.at("rho");
  RhoIndex rho{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(),
               r.at(3).get<std::string>() == "L"};
  return build_multitile(I, wu, rho);
}

const char* kind_name(TreeKind k) {
  switch (k) {
    case TreeKind::l_overlapping: return "l_overlapping";
    case TreeKind::l_lacunary: return "l_lacunary";
    case TreeKind::l_plus: return "l_plus";
    case TreeKind::l_minus: return "l_minus";
    default: return "any";
  }
}

// ---------------------------------------------------------------------------
// Randomized inputs (single stream per run, drawn in a documented order).
// ---------------------------------------------------------------------------

SampledFunction random_function(Rng& rng, const Domain& dom, std::size_t n) {
  SampledFunction f = SampledFunction::zeros(dom, n);
  for (cplx& v : f.samples) v = rng.cnormal();
  return f;
}

// Separated multitile family: one coarse upper-interval scale plus a sparse
// band of fine ones, spacings wide enough for the dilate-disjointness checks.
std::vector<Multitile> random_tiles(Rng& rng, int count) {
  std::vector<Multitile> out;
  DyadicInterval big{1, rng.uniform_int(-2, 1)};
  std::vector<long long> small_idx;
  for (long long base = -96; base < 96; base += 13 + rng.uniform_int(0, 6))
    if (rng.uniform() < 0.6) small_idx.push_back(base);
  const auto& classes = rho_classes();
  while (static_cast<int>(out.size()) < count) {
    bool use_big = rng.uniform() < 0.4 || small_idx.empty();
    DyadicInterval wu =
        use_big ? big
                : DyadicInterval{-4, small_idx[static_cast<std::size_t>(rng.uniform_int(
                                     0, static_cast<long long>(small_idx.size()) - 1))]};
    std::vector<RhoIndex> ok;
    for (const RhoIndex& r : classes)
      if (r.left_side == wu.is_left_child() && r.cls != 3) ok.push_back(r);
    RhoIndex rho =
        ok[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(ok.size()) - 1))];
    int iscale = -wu.scale - 1;
    long long lo = static_cast<long long>(std::ldexp(-16.0, -iscale));
    long long hi = static_cast<long long>(std::ldexp(16.0, -iscale));
    out.push_back(build_multitile(DyadicInterval{iscale, lo + rng.uniform_int(0, hi - lo - 1)},
                                  wu, rho));
  }
  return out;
}

// Measurable-selection data whose frequency ladders are anchored at the tiles'
// landmarks (so the density functional sees them) and thread tile frequency
// slots on half the rows (so the phase-space projection picks up mass).
LinearizationData random_linearization(const std::vector<Multitile>& tiles, Rng& rng,
                                       std::size_t n, double r_conj) {
  std::vector<double> lad;
  for (const Multitile& p : tiles) {
    FreqInterval h = frequency_hull(p);
    if (std::isfinite(h.lo)) lad.push_back(h.lo);
    FreqInterval l2 = dilate(p.omega_l, kC2);
    if (std::isfinite(l2.lo)) lad.push_back(l2.lo);
  }
  std::sort(lad.begin(), lad.end());
  lad.erase(std::unique(lad.begin(), lad.end()), lad.end());
  if (lad.size() > 12) {
    std::vector<double> keep;
    for (std::size_t q = 0; q < 12; ++q) keep.push_back(lad[q * (lad.size() - 1) / 11]);
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    lad = keep;
  }
  if (lad.empty()) lad.push_back(0.0);
  LinearizationData lin;
  lin.K = lad.size();
  lin.xi.assign(n, {});
  lin.a.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row;
    if (rng.uniform() < 0.5 || tiles.empty()) {
      row = lad;
      row.push_back(lad.back() + 100.0);
    } else {
      const Multitile& p =
          tiles[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(tiles.size()) - 1))];
      row.push_back(0.5 * (p.omega_l.lo + p.omega_l.hi));
      row.push_back(p.omega_h.finite() ? 0.5 * (p.omega_h.lo + p.omega_h.hi)
                                       : p.omega_h.lo + 1.0);
      while (row.size() < lin.K + 1) row.push_back(row.back() + 100.0);
    }
    std::vector<cplx> a(lin.K);
    double s = 0.0;
    for (cplx& v : a) v = rng.cnormal();
    for (const cplx& v : a) s += std::pow(std::abs(v), r_conj);
    for (cplx& v : a) v /= std::pow(s, 1.0 / r_conj);
    lin.xi[j] = row;
    lin.a[j] = a;
  }
  return lin;
}

// ---------------------------------------------------------------------------
// Subcommand drivers.
// ---------------------------------------------------------------------------

int run_sharpness(const RunConfig& cfg, Artifacts& art) {
  const json& p = cfg.parameters;
  double pp = param(p, "p", 1.2), r = param(p, "r", 4.0), s = param(p, "s", kInf);
  std::size_t grid = static_cast<std::size_t>(param_int(p, "grid_count", 8192));
  std::vector<long long> N_list;
  if (p.contains("N_list"))
    for (const json& v : p.at("N_list")) N_list.push_back(v.get<long long>());
  else
    for (long long N = 64; N <= 1024; N *= 2) N_list.push_back(N);

  GrowthResult g = growth_experiment(pp, r, s, N_list, grid);
  std::ostringstream csv;
  csv << "N,ratio\n";
  for (const GrowthRow& row : g.table) csv << row.N << "," << fmt_double(row.ratio) << "\n";
  art.add("growth.csv", csv.str());

  json summary;
  summary["fitted_exponent"] = g.fitted_exponent;
  summary["target"] = g.target;
  summary["abs_err"] = std::abs(g.fitted_exponent - g.target);
  art.add("summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_decompose(const RunConfig& cfg, Artifacts& art) {
  const json& p = cfg.parameters;
  const std::size_t n = static_cast<std::size_t>(param_int(p, "grid_count", 512));
  const int count = static_cast<int>(param_int(p, "tile_count", 20));
  const double r = param(p, "r", 2.0);
  const double rc = VariationParams(r).conjugate();
  Rng rng(cfg.seed);

  Domain dom = Domain::segment(-16.0, 16.0);
  std::vector<Multitile> tiles;
  if (p.contains("tiles_file")) {
    std::ifstream in(p.at("tiles_file").get<std::string>());
    if (!in) throw std::runtime_error("decompose: cannot open tiles_file");
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) tiles.push_back(multitile_from_json(json::parse(line)));
  } else {
    tiles = random_tiles(rng, count);
  }

  SampledFunction f = SampledFunction::zeros(dom, n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = f.x(j);
    if (x > -6.0 && x < 6.0) f.samples[j] = std::polar(1.0, 2.0 * M_PI * (1.3 * x + 0.1 * x * x));
  }
  SampledFunction E = SampledFunction::zeros(dom, n);
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(E.x(j)) < 12.0) E.samples[j] = 1.0;
  LinearizationData lin = random_linearization(tiles, rng, n, rc);

  std::ostringstream tl;
  for (const Multitile& t : tiles) tl << multitile_json(t).dump() << "\n";
  art.add("tiles.jsonl", tl.str());

  std::vector<cplx> coefs = packet_coefficients(tiles, f);
  auto tree_json = [&](const Tree& t) {
    json j;
    j["top"] = json{{"I_T", dyadic_json(t.top_interval)}, {"xi_T", t.top_frequency}};
    j["kind"] = kind_name(t.kind);
    j["tile_ids"] = t.tile_ids;
    double e = 0.0;
    for (std::size_t id : t.tile_ids) e += std::norm(coefs[id]);
    j["energy_contrib"] = e / t.top_interval.length();
    return j;
  };

  // Level-by-level greedy removal: per level j, an energy stage (k = 0) at
  // threshold C0 2^{-j/2} sqrt(|F|) then a density stage (k = 1) at
  // C0 2^{-j/r'}; one report file per (j, k), one summary row per stage.
  double fmeas = 0.0;
  for (const cplx& v : f.samples)
    if (std::abs(v) > 0.0) fmeas += f.dx();
  const double root_f = std::sqrt(std::max(fmeas, f.dx()));
  const double e0 = energy(tiles, f);
  const double d0 = density(tiles, E, lin, r);
  const double c0 = std::max({1.0, e0 / root_f, d0});

  std::vector<Multitile> rem = tiles;
  std::vector<std::size_t> rem_ids(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) rem_ids[i] = i;

  std::ostringstream summary;
  summary << "j,k,num_trees,sum_IT,bmo_ratio\n";
  for (int j = 0; !rem.empty(); ++j) {
    const double ej = c0 * std::pow(2.0, -0.5 * j) * root_f;
    const double mj = c0 * std::pow(2.0, -static_cast<double>(j) / rc);
    for (int stage = 0; stage < 2; ++stage) {
      SelectionReport rep = stage == 0 ? energy_increment(rem, f, ej)
                                       : density_increment(rem, E, lin, r, mj);
      for (Tree& t : rep.trees)
        for (std::size_t& id : t.tile_ids) id = rem_ids[id];
      if (stage == 1 && mj < 1e-9 && !rep.residual.empty()) {
        // Leftovers invisible to both functionals become singleton trees.
        for (std::size_t i : rep.residual) {
          std::vector<Multitile> one{rem[i]};
          Tree tr;
          tr.kind = TreeKind::any;
          tr.tile_ids = {rem_ids[i]};
          bool placed = false;
          for (const detail::TopCandidate& cand : detail::enumerate_tops(one))
            if (tile_in_tree(one[0], cand.I, cand.xi)) {
              tr.top_interval = cand.I;
              tr.top_frequency = cand.xi;
              placed = true;
              break;
            }
          if (!placed) throw std::runtime_error("decompose: tile admits no top");
          rep.sum_top_lengths += tr.top_interval.length();
          rep.trees.push_back(std::move(tr));
        }
        rep.residual.clear();
      }
      json report;
      report["j"] = j;
      report["k"] = stage;
      report["threshold"] = stage == 0 ? ej : mj;
      json trees = json::array();
      for (const Tree& t : rep.trees) trees.push_back(tree_json(t));
      report["trees"] = trees;
      char name[64];
      std::snprintf(name, sizeof name, "report_j%d_k%d.json", j, stage);
      art.add(name, report.dump(2) + "\n");
      double bmo = rep.trees.empty()
                       ? 0.0
                       : bmo_check(rep.trees, 0, f, stage == 0 ? ej : std::max(mj, 1e-9));
      summary << j << "," << stage << "," << rep.trees.size() << ","
              << fmt_double(rep.sum_top_lengths) << "," << fmt_double(bmo) << "\n";
      std::vector<Multitile> next;
      std::vector<std::size_t> next_ids;
      for (std::size_t i : rep.residual) {
        next.push_back(rem[i]);
        next_ids.push_back(rem_ids[i]);
      }
      rem = std::move(next);
      rem_ids = std::move(next_ids);
      if (rem.empty()) break;
    }
  }
  art.add("summary.csv", summary.str());
  return 0;
}

int run_lepingle(const RunConfig& cfg, Artifacts& art) {
  const json& p = cfg.parameters;
  const std::size_t n = static_cast<std::size_t>(param_int(p, "grid_count", 4096));
  const int k_min = static_cast<int>(param_int(p, "k_min", -8));
  const int k_max = static_cast<int>(param_int(p, "k_max", 0));
  const double r = param(p, "r", 3.0);
  const double pp = param(p, "p", 2.0);
  Rng rng(cfg.seed);
  SampledFunction f = SampledFunction::zeros(Domain::circle(), n);
  for (cplx& v : f.samples) v = rng.normal();

  MartingaleSweep sw = dyadic_averages(f, k_min, k_max);
  std::ostringstream csv;
  csv << "x,k,value\n";
  for (int k = k_min; k <= k_max; ++k) {
    const std::vector<cplx>& lvl = sw.level(k);
    for (std::size_t j = 0; j < n; j += std::max<std::size_t>(1, n / 256))
      csv << fmt_double(f.x(j)) << "," << k << "," << fmt_double(lvl[j].real()) << "\n";
  }
  art.add("averages.csv", csv.str());

  SampledFunction var = martingale_variation(f, VariationParams(r), k_min, k_max);
  SquareFunctionResult sq = square_function(f, k_min, k_max, pp);
  json summary;
  summary["grid"] = n;
  summary["r"] = r;
  summary["p"] = pp;
  summary["variation_ratio"] = lp_norm(var, 2.0) / lp_norm(f, 2.0);
  summary["square_ratio"] = sq.ratio;
  art.add("summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_mpz(const RunConfig& cfg, Artifacts& art) {
  const json& p = cfg.parameters;
  const std::size_t n = static_cast<std::size_t>(param_int(p, "grid_count", 512));
  const double pp = param(p, "p", 1.5);
  const double r = param(p, "r", 1.8);
  const double off = param(p, "xi_offset", 0.0);
  Rng rng(cfg.seed);
  SampledFunction f = random_function(rng, Domain::segment(-2.0, 2.0), n);
  VmpzResult res = vmpz_norm(f, pp, r, off);

  std::ostringstream csv;
  csv << "xi,variation\n";
  for (std::size_t q = 0; q < res.xi.size(); ++q)
    csv << fmt_double(res.xi[q]) << "," << fmt_double(res.row_variation[q]) << "\n";
  art.add("rows.csv", csv.str());

  json summary;
  summary["p"] = pp;
  summary["r"] = r;
  summary["ratio"] = res.ratio;
  summary["grid"] = n;
  art.add("summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_nlft(const RunConfig& cfg, Artifacts& art) {
  const json& p = cfg.parameters;
  const std::size_t n = static_cast<std::size_t>(param_int(p, "grid_count", 64));
  const double amp = param(p, "amplitude", 0.05);
  const double r = param(p, "r", 1.5);
  const double k_lo = param(p, "k_min", -2.0);
  const double k_hi = param(p, "k_max", 2.0);
  const long long k_count = param_int(p, "k_count", 9);
  Rng rng(cfg.seed);
  SampledFunction f = SampledFunction::zeros(Domain::segment(-1.0, 1.0), n);
  for (cplx& v : f.samples) v = amp * rng.cnormal();
  VariationParams vp(r);

  std::ostringstream csv, curve_lines;
  csv << "k,var_curve,var_trace,delta\n";
  for (long long q = 0; q < k_count; ++q) {
    double k = k_count > 1 ? k_lo + (k_hi - k_lo) * static_cast<double>(q) /
                                        static_cast<double>(k_count - 1)
                           : k_lo;
    GroupCurve curve = nlft_evolve(f, k);
    LeftTrace tr = left_trace(curve);
    double vc = curve_variation(curve, vp);
    double vt = trace_variation(tr, vp);
    csv << fmt_double(k) << "," << fmt_double(vc) << "," << fmt_double(vt) << ","
        << fmt_double(std::abs(vc - vt)) << "\n";
    if (q == 0) {
      for (std::size_t i = 0; i < curve.points.size(); ++i) {
        json line;
        line["t"] = curve.times[i];
        line["a"] = json::array({curve.points[i].a.real(), curve.points[i].a.imag()});
        line["b"] = json::array({curve.points[i].b.real(), curve.points[i].b.imag()});
        curve_lines << line.dump() << "\n";
      }
    }
  }
  art.add("sweep.csv", csv.str());
  art.add("curve.jsonl", curve_lines.str());
  return 0;
}

int run_selftest(const RunConfig& cfg, Artifacts& art) {
  const json& p = cfg.parameters;
  const long long cases = param_int(p, "cases", 1000);
  Rng rng(cfg.seed);
  const double rs[] = {1.0, 1.5, 2.0, 3.0, kInf};
  double max_err = 0.0;
  for (long long c = 0; c < cases; ++c) {
    std::size_t len = static_cast<std::size_t>(rng.uniform_int(2, 12));
    std::vector<cplx> seq(len);
    for (cplx& v : seq) v = rng.cnormal();
    VariationParams vp(rs[static_cast<std::size_t>(c) % 5]);
    double dp = variation_norm(seq, vp);
    double bf = variation_norm_bruteforce(IndexedSequence(seq), vp);
    max_err = std::max(max_err, std::abs(dp - bf));
  }
  bool pass = max_err <= 1e-12;
  json summary;
  summary["cases"] = cases;
  summary["max_abs_err"] = max_err;
  summary["pass"] = pass;
  art.add("selftest.json", summary.dump(2) + "\n");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variation-norm experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir, experiment;
  std::uint64_t seed = 0;
  int threads = 0;
  bool have_seed = false, have_out = false, have_threads = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "random seed (overrides config)")->each([&](auto) {
    have_seed = true;
  });
  app.add_option("--out", out_dir, "output directory (overrides config)")->each([&](auto) {
    have_out = true;
  });
  app.add_option("--threads", threads, "worker threads (overrides config)")->each([&](auto) {
    have_threads = true;
  });
  for (const char* name : {"sharpness", "decompose", "lepingle", "mpz", "nlft", "selftest"})
    app.add_subcommand(name)->fallthrough();
  CLI11_PARSE(app, argc, argv);
  experiment = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  cfg.experiment = experiment;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config file: " + config_path);
      json doc = json::parse(in);
      if (doc.contains("experiment")) {
        std::string e = doc.at("experiment").get<std::string>();
        if (e == "varnorm-selftest") e = "selftest";
        if (e != experiment)
          throw std::runtime_error("config experiment '" + e + "' does not match subcommand");
      }
      if (doc.contains("parameters")) cfg.parameters = doc.at("parameters");
      if (doc.contains("output_dir")) cfg.out_dir = doc.at("output_dir").get<std::string>();
      if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
      if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
    }
    if (have_seed) cfg.seed = seed;
    if (have_out) cfg.out_dir = out_dir;
    if (have_threads) cfg.threads = threads;
    if (cfg.threads < 0) throw std::invalid_argument("--threads must be >= 0");

    Artifacts art;
    art.dir = cfg.out_dir;
    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    if (experiment == "sharpness") status = run_sharpness(cfg, art);
    else if (experiment == "decompose") status = run_decompose(cfg, art);
    else if (experiment == "lepingle") status = run_lepingle(cfg, art);
    else if (experiment == "mpz") status = run_mpz(cfg, art);
    else if (experiment == "nlft") status = run_nlft(cfg, art);
    else status = run_selftest(cfg, art);
    const auto t1 = std::chrono::steady_clock::now();
    art.flush(cfg.echo(), std::chrono::duration<double>(t1 - t0).count());
    return status;
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    err["experiment"] = experiment;
    try {
      fs::create_directories(cfg.out_dir);
      std::ofstream(cfg.out_dir / "error.json") << err.dump(2) << "\n";
    } catch (...) {
    }
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  }
}
