// Command-line front end: every pipeline of the library behind one
// binary with file I/O and JSON run reports on stdout.
//
// Exit codes: 0 success, 2 input parse error, 3 precondition violation,
// 4 numerical breakdown.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hollowstab/bench.hpp"
#include "hollowstab/errors.hpp"
#include "hollowstab/hollow.hpp"
#include "hollowstab/matrix.hpp"
#include "hollowstab/matrix_io.hpp"
#include "hollowstab/pair_hollow.hpp"
#include "hollowstab/sde.hpp"
#include "hollowstab/spectrum.hpp"
#include "hollowstab/stabilize.hpp"
#include "hollowstab/symplectic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hollowstab;

namespace {

class WallClock {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string fnv1a64_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << h;
  return os.str();
}

struct Report {
  json j;
  WallClock clock;

  explicit Report(const std::string& command) { j["command"] = command; }
  void input(const fs::path& p) { j["inputs"][p.string()] = fnv1a64_digest(p); }
  void output(const fs::path& p) { j["outputs"].push_back(p.string()); }
  void finish() {
    j["wall_time_ms"] = clock.elapsed_ms();
    std::cout << j.dump(2) << std::endl;
  }
};

DenseMatrix must_load(const fs::path& p) { return load_matrix(p); }

// Residuals are recomputed from what actually landed on disk.
DenseMatrix reread(const fs::path& p) { return load_matrix(p); }

fs::path sibling(const fs::path& base, const std::string& tag) {
  fs::path p = base;
  const std::string ext = p.extension().string();
  p.replace_extension();
  p += "." + tag + (ext.empty() ? ".txt" : ext);
  return p;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("cannot parse list entry '" + tok + "'");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_list(csv)) out.push_back(static_cast<int>(v));
  return out;
}

double almost_hollow_residual(const DenseMatrix& b) {
  const int n = b.rows();
  double r = 0.0;
  for (int i = 0; i + 2 < n; ++i) r = std::max(r, std::abs(b(i, i)));
  if (n >= 2) r = std::max(r, std::abs(b(n - 2, n - 2) + b(n - 1, n - 1)));
  return r;
}

double transform_consistency(const DenseMatrix& input, const DenseMatrix& q,
                             const DenseMatrix& transformed) {
  DenseMatrix qaq = matmul(q.transposed(), matmul(input, q));
  qaq -= transformed;
  return qaq.frobenius_norm();
}

int run_hollowise(const std::string& input, const std::string& output,
                  bool constant_diagonal, double tol) {
  Report rep("hollowise");
  rep.input(input);
  const DenseMatrix a = must_load(input);
  HollowReport hr = constant_diagonal ? constant_diagonalise(a)
                                      : hollowise(a, tol);
  const fs::path out_t = output;
  const fs::path out_q = sibling(out_t, "Q");
  save_matrix(out_t, hr.transformed);
  save_matrix(out_q, hr.transform.matrix());
  rep.output(out_t);
  rep.output(out_q);

  const DenseMatrix t2 = reread(out_t);
  const DenseMatrix q2 = reread(out_q);
  rep.j["rotations_used"] = hr.rotations_used;
  rep.j["residuals"]["orthogonality"] = orthogonality_residual(q2);
  rep.j["residuals"]["transform_consistency"] = transform_consistency(a, q2, t2);
  if (constant_diagonal) {
    rep.j["residuals"]["diagonal_spread"] = t2.diagonal_spread();
  } else {
    rep.j["residuals"]["max_abs_diagonal"] = t2.max_abs_diagonal();
  }
  rep.finish();
  return 0;
}

int run_pair(const std::string& a_path, const std::string& b_path,
             const std::string& outdir, double tol) {
  Report rep("pair");
  rep.input(a_path);
  rep.input(b_path);
  const DenseMatrix a = must_load(a_path);
  const DenseMatrix b = must_load(b_path);
  PairReport pr = pair_hollowise(a, b, tol);
  fs::create_directories(outdir);
  const fs::path fa = fs::path(outdir) / "A_out.txt";
  const fs::path fb = fs::path(outdir) / "B_out.txt";
  const fs::path fq = fs::path(outdir) / "Q.txt";
  save_matrix(fa, pr.a_out);
  save_matrix(fb, pr.b_out);
  save_matrix(fq, pr.transform.matrix());
  for (const auto& p : {fa, fb, fq}) rep.output(p);

  const DenseMatrix a2 = reread(fa);
  const DenseMatrix b2 = reread(fb);
  const DenseMatrix q2 = reread(fq);
  rep.j["quartics_solved"] = pr.quartics_solved;
  rep.j["residuals"]["a_max_abs_diagonal"] = a2.max_abs_diagonal();
  rep.j["residuals"]["b_almost_hollow"] = almost_hollow_residual(b2);
  rep.j["residuals"]["orthogonality"] = orthogonality_residual(q2);
  rep.j["residuals"]["a_transform_consistency"] =
      transform_consistency(a, q2, a2);
  rep.j["residuals"]["b_transform_consistency"] =
      transform_consistency(b, q2, b2);
  rep.finish();
  return 0;
}

int run_symplectic(const std::string& input, const std::string& outdir) {
  Report rep("symplectic");
  rep.input(input);
  const DenseMatrix a = must_load(input);
  SymplReport sr = sympl_constant_diagonalise(a);
  fs::create_directories(outdir);
  const fs::path ft = fs::path(outdir) / "transformed.txt";
  const fs::path fu = fs::path(outdir) / "U.txt";
  save_matrix(ft, sr.transformed);
  save_matrix(fu, sr.transform.matrix());
  rep.output(ft);
  rep.output(fu);

  const DenseMatrix t2 = reread(ft);
  const DenseMatrix u2 = reread(fu);
  rep.j["residuals"]["diagonal_spread"] = t2.diagonal_spread();
  rep.j["residuals"]["symplecticity"] = symplectic_residual(u2);
  rep.j["residuals"]["orthogonality"] = orthogonality_residual(u2);
  rep.j["residuals"]["transform_consistency"] = transform_consistency(a, u2, t2);
  rep.finish();
  return 0;
}

int run_stabilize(const std::string& mode, const std::string& a_path,
                  const std::string& b_path, const std::string& omega_csv,
                  const std::string& lambda_csv, double mu_max,
                  double refine_rel, const std::string& m_fixed_path,
                  const std::string& mu_list_csv, const std::string& outdir) {
  Report rep("stabilize");
  rep.input(a_path);
  const DenseMatrix a = must_load(a_path);
  std::vector<DenseMatrix> systems{a};
  if (!b_path.empty()) {
    rep.input(b_path);
    systems.push_back(must_load(b_path));
  }
  rep.j["mode"] = mode;

  std::optional<DenseMatrix> m_fixed;
  if (!m_fixed_path.empty()) {
    rep.input(m_fixed_path);
    m_fixed = must_load(m_fixed_path);
  }

  GainSearchOptions gain;
  gain.mu_max = mu_max;
  gain.refine_rel = refine_rel;

  json residuals;
  DenseMatrix m_out(a.rows(), a.rows());
  if (mode == "noise") {
    if (m_fixed) {
      auto alpha = [&](const DenseMatrix& sys, double mu) {
        return spectral_abscissa(build_lyapunov_matrix(sys, *m_fixed, mu).k);
      };
      if (!mu_list_csv.empty()) {
        for (double mu : parse_list(mu_list_csv)) {
          json row;
          row["mu"] = mu;
          for (std::size_t s = 0; s < systems.size(); ++s) {
            row["abscissae"].push_back(alpha(systems[s], mu));
          }
          rep.j["abscissa_table"].push_back(row);
        }
      } else {
        auto worst = [&](double mu) {
          double w = -1e300;
          for (const auto& sys : systems) w = std::max(w, alpha(sys, mu));
          return w;
        };
        const GainSearchResult gs = search_gain(worst, gain);
        rep.j["mu"] = gs.mu;
        rep.j["mu_bracket"] = {gs.lo, gs.hi};
        for (const auto& sys : systems) {
          rep.j["abscissae"].push_back(alpha(sys, gs.mu));
        }
      }
      m_out = *m_fixed;
    } else {
      NoiseStabilizeOptions opts;
      opts.gain = gain;
      if (!omega_csv.empty()) opts.omega = parse_list(omega_csv);
      const StabilizationDesign d = noise_stabilize(systems, opts);
      rep.j["mu"] = d.mu;
      rep.j["mu_bracket"] = {d.mu_bracket_lo, d.mu_bracket_hi};
      rep.j["abscissae"] = d.abscissae;
      m_out = d.m;
    }
  } else if (mode == "rotation") {
    if (systems.size() != 1) {
      throw PreconditionError("rotation mode takes exactly one system");
    }
    if (m_fixed) {
      auto alpha = [&](double mu) {
        DenseMatrix s = *m_fixed;
        s *= mu;
        s += a;
        return spectral_abscissa(s);
      };
      const GainSearchResult gs = search_gain(alpha, gain);
      rep.j["mu"] = gs.mu;
      rep.j["mu_bracket"] = {gs.lo, gs.hi};
      rep.j["mu_crossing_estimate"] = 0.5 * (gs.lo + gs.hi);
      rep.j["abscissae"] = {alpha(gs.mu)};
      m_out = *m_fixed;
    } else {
      RotationStabilizeOptions opts;
      opts.gain = gain;
      if (!lambda_csv.empty()) opts.lambda = parse_list(lambda_csv);
      const StabilizationDesign d = rotation_stabilize(a);
      rep.j["mu"] = d.mu;
      rep.j["mu_bracket"] = {d.mu_bracket_lo, d.mu_bracket_hi};
      rep.j["abscissae"] = d.abscissae;
      m_out = d.m;
    }
  } else {
    throw PreconditionError("--mode must be rotation or noise");
  }

  if (!outdir.empty()) {
    fs::create_directories(outdir);
    const fs::path fm = fs::path(outdir) / "M.txt";
    save_matrix(fm, m_out);
    rep.output(fm);
    // Residuals from the file, not the in-memory matrix.
    const DenseMatrix m2 = reread(fm);
    double skew = 0.0;
    for (int i = 0; i < m2.rows(); ++i)
      for (int j2 = 0; j2 < m2.cols(); ++j2)
        skew = std::max(skew, std::abs(m2(i, j2) + m2(j2, i)));
    residuals["skew_symmetry"] = skew;
    if (mode == "rotation") {
      residuals["hamiltonian"] = hamiltonian_residual(m2);
    }
    rep.j["residuals"] = residuals;
  }
  rep.finish();
  return 0;
}

int run_simulate(const std::string& a_path, const std::string& m_path,
                 double mu, int paths, double dt, double t_end,
                 std::uint64_t seed, bool servo, const std::string& x0_csv,
                 double mu0, const std::string& output, int record_every) {
  Report rep("simulate");
  rep.input(a_path);
  rep.input(m_path);
  const DenseMatrix a = must_load(a_path);
  const DenseMatrix m = must_load(m_path);

  if (servo) {
    std::vector<double> x0 =
        x0_csv.empty() ? std::vector<double>(static_cast<std::size_t>(a.rows()), 1.0)
                       : parse_list(x0_csv);
    ServoResult r = simulate_servo(a, m, x0, mu0, t_end, dt, record_every);
    const fs::path out = output;
    {
      std::ofstream os(out);
      if (!os) throw ParseError("cannot open " + out.string());
      os << "t,x_norm,mu\n";
      for (std::size_t k = 0; k < r.times.size(); ++k) {
        os << format_entry(r.times[k]) << ',' << format_entry(r.x_norm[k])
           << ',' << format_entry(r.mu[k]) << '\n';
      }
    }
    rep.output(out);
    rep.j["diverged"] = r.diverged;
    // Recompute the headline numbers from the file.
    std::ifstream is(out);
    std::string line;
    std::getline(is, line);
    double last_mu = 0.0, last_norm = 0.0;
    while (std::getline(is, line)) {
      const auto c1 = line.find(','), c2 = line.rfind(',');
      last_norm = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      last_mu = std::stod(line.substr(c2 + 1));
    }
    rep.j["final_mu"] = last_mu;
    rep.j["final_x_norm"] = last_norm;
  } else {
    SdeConfig cfg;
    cfg.a = a;
    cfg.m = m;
    cfg.mu = mu;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.n_paths = paths;
    cfg.seed = seed;
    cfg.record_stride = record_every;
    if (!x0_csv.empty()) cfg.x0 = parse_list(x0_csv);
    SamplePathEnsemble e = euler_maruyama(cfg);
    const fs::path out = output;
    {
      std::ofstream os(out);
      if (!os) throw ParseError("cannot open " + out.string());
      write_ensemble_csv(os, e);
    }
    const fs::path meta = sibling(out, "meta");
    {
      fs::path mj = meta;
      mj.replace_extension(".json");
      std::ofstream os(mj);
      write_ensemble_metadata_json(os, cfg, e);
      rep.output(mj);
    }
    rep.output(out);
    rep.j["excluded_paths"] = e.excluded_paths;

    // log slope recomputed from the written CSV.
    std::ifstream is(out);
    std::string line;
    std::getline(is, line);
    SamplePathEnsemble from_file;
    while (std::getline(is, line)) {
      const auto tpos = line.find(',');
      const auto mpos = line.rfind(',');
      from_file.times.push_back(std::stod(line.substr(0, tpos)));
      from_file.mean_square.push_back(std::stod(line.substr(mpos + 1)));
    }
    try {
      rep.j["log_slope_tail_half"] = log_slope(from_file, 0.5);
    } catch (const BreakdownError&) {
      rep.j["log_slope_tail_half"] = nullptr;
    }
  }
  rep.finish();
  return 0;
}

int run_bench(const std::string& sizes_csv, int trials, const std::string& algo,
              std::uint64_t seed) {
  Report rep("bench");
  const std::vector<int> sizes = parse_int_list(sizes_csv);
  const BenchAlgo a = algo == "pair" ? BenchAlgo::pair
                    : algo == "symplectic"
                        ? BenchAlgo::symplectic
                        : throw PreconditionError("--algo must be pair or symplectic");
  const BenchResult r = run_scaling_bench(a, sizes, trials, seed);
  std::cerr << "size    median_ms\n";
  for (const auto& row : r.rows) {
    std::cerr << row.size << "\t" << row.median_ms << "\n";
    json jr;
    jr["size"] = row.size;
    jr["median_ms"] = row.median_ms;
    rep.j["table"].push_back(jr);
  }
  if (r.loglog_slope) {
    std::cerr << "log-log slope: " << *r.loglog_slope << "\n";
    rep.j["loglog_slope"] = *r.loglog_slope;
  }
  rep.j["trials"] = trials;
  rep.j["seed"] = seed;
  rep.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal and symplectic diagonal-shaping transforms with "
               "stabilization and simulation pipelines"};
  app.require_subcommand(1);

  // hollowise
  std::string h_in, h_out;
  bool h_const = false;
  double h_tol = 0.0;
  auto* sh = app.add_subcommand("hollowise",
                                "Drive the diagonal of a zero-trace matrix to "
                                "zero (or any matrix to constant diagonal)");
  sh->add_option("--input", h_in)->required();
  sh->add_option("--output", h_out)->required();
  sh->add_flag("--constant-diagonal", h_const);
  sh->add_option("--tol", h_tol);

  // pair
  std::string p_a, p_b, p_out;
  double p_tol = 0.0;
  auto* sp = app.add_subcommand(
      "pair", "Simultaneously transform a zero-trace pair (hollow, almost hollow)");
  sp->add_option("--a", p_a)->required();
  sp->add_option("--b", p_b)->required();
  sp->add_option("--output-dir", p_out)->required();
  sp->add_option("--tol", p_tol);

  // symplectic
  std::string y_in, y_out;
  auto* sy = app.add_subcommand(
      "symplectic", "Constant diagonal under a symplectic orthogonal similarity");
  sy->add_option("--input", y_in)->required();
  sy->add_option("--output-dir", y_out)->required();

  // stabilize
  std::string st_mode, st_a, st_b, st_omega, st_lambda, st_mfixed, st_mulist,
      st_out;
  double st_mumax = 16384.0, st_refine = 1e-3;
  auto* ss = app.add_subcommand("stabilize",
                                "Design rotation or noise stabilizers");
  ss->add_option("--mode", st_mode)->required();
  ss->add_option("--a", st_a)->required();
  ss->add_option("--b", st_b);
  ss->add_option("--omega", st_omega);
  ss->add_option("--lambda", st_lambda);
  ss->add_option("--mu-max", st_mumax);
  ss->add_option("--refine-rel", st_refine);
  ss->add_option("--m-fixed", st_mfixed);
  ss->add_option("--mu-list", st_mulist);
  ss->add_option("--output-dir", st_out);

  // simulate
  std::string si_a, si_m, si_x0, si_out = "simulate_out.csv";
  double si_mu = 0.0, si_dt = 1e-4, si_tend = 10.0, si_mu0 = 0.0;
  int si_paths = 100, si_record = 1;
  std::uint64_t si_seed = 0;
  bool si_servo = false;
  auto* si = app.add_subcommand("simulate",
                                "Euler-Maruyama Monte Carlo or the adaptive servo");
  si->add_option("--a", si_a)->required();
  si->add_option("--m", si_m)->required();
  si->add_option("--mu", si_mu);
  si->add_option("--paths", si_paths);
  si->add_option("--dt", si_dt);
  si->add_option("--t-end", si_tend);
  si->add_option("--seed", si_seed);
  si->add_flag("--servo", si_servo);
  si->add_option("--x0", si_x0);
  si->add_option("--mu0", si_mu0);
  si->add_option("--output", si_out);
  si->add_option("--record-every", si_record);

  // bench
  std::string b_sizes, b_algo;
  int b_trials = 5;
  std::uint64_t b_seed = 42;
  auto* sb = app.add_subcommand("bench", "Scaling benchmark with a median table");
  sb->add_option("--sizes", b_sizes)->required();
  sb->add_option("--trials", b_trials);
  sb->add_option("--algo", b_algo)->required();
  sb->add_option("--seed", b_seed);

  try {
    app.parse(argc, argv);
    if (sh->parsed()) return run_hollowise(h_in, h_out, h_const, h_tol);
    if (sp->parsed()) return run_pair(p_a, p_b, p_out, p_tol);
    if (sy->parsed()) return run_symplectic(y_in, y_out);
    if (ss->parsed()) {
      return run_stabilize(st_mode, st_a, st_b, st_omega, st_lambda, st_mumax,
                           st_refine, st_mfixed, st_mulist, st_out);
    }
    if (si->parsed()) {
      return run_simulate(si_a, si_m, si_mu, si_paths, si_dt, si_tend, si_seed,
                          si_servo, si_x0, si_mu0, si_out, si_record);
    }
    if (sb->parsed()) return run_bench(b_sizes, b_trials, b_algo, b_seed);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const BreakdownError& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
