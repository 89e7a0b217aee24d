#include "hollowstab/sde.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <json.hpp>

#include "hollowstab/errors.hpp"
#include "hollowstab/matrix_io.hpp"

namespace hollowstab {

namespace {

constexpr double kDivergenceBound = 1e150;

// Deterministic standard normals: mt19937_64 words mapped to (0, 1)
// uniforms, paired through the Box-Muller transform.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : rng_(seed) {}

  double uniform01() {
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Pairwise (tree) summation over a contiguous range; the result depends
// only on the element order, never on chunking.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 4) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

void matvec_into(const DenseMatrix& a, std::span<const double> x,
                 std::span<double> y) {
  const int n = a.rows();
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
}

}  // namespace

SamplePathEnsemble euler_maruyama(const SdeConfig& cfg) {
  if (!cfg.a.square() || !cfg.m.square() || cfg.a.rows() != cfg.m.rows()) {
    throw PreconditionError("euler_maruyama: A and M must be square, same size");
  }
  if (!(cfg.dt > 0.0) || !(cfg.t_end >= cfg.dt)) {
    throw PreconditionError("euler_maruyama: need 0 < dt <= t_end");
  }
  if (cfg.n_paths < 1) throw PreconditionError("euler_maruyama: n_paths >= 1");
  if (cfg.record_stride < 1) {
    throw PreconditionError("euler_maruyama: record_stride >= 1");
  }
  const int n = cfg.a.rows();
  if (cfg.x0 && static_cast<int>(cfg.x0->size()) != n) {
    throw PreconditionError("euler_maruyama: x0 length mismatch");
  }

  // Ito drift A + (mu M)^2 / 2 and diffusion mu M.
  DenseMatrix drift = matmul(cfg.m, cfg.m);
  drift *= 0.5 * cfg.mu * cfg.mu;
  drift += cfg.a;
  DenseMatrix diffusion = cfg.m;
  diffusion *= cfg.mu;

  const long long steps = std::llround(cfg.t_end / cfg.dt);
  if (steps < 1) throw PreconditionError("euler_maruyama: no steps to take");
  const double sqrt_dt = std::sqrt(cfg.dt);

  SamplePathEnsemble out;
  for (long long k = 0; k <= steps; k += cfg.record_stride) {
    out.times.push_back(static_cast<double>(k) * cfg.dt);
  }
  const std::size_t samples = out.times.size();
  out.norms.assign(static_cast<std::size_t>(cfg.n_paths),
                   std::vector<double>(samples, 0.0));
  out.seeds.resize(static_cast<std::size_t>(cfg.n_paths));
  out.diverged_at.assign(static_cast<std::size_t>(cfg.n_paths), -1);

  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> dx(static_cast<std::size_t>(n));
  std::vector<double> mx(static_cast<std::size_t>(n));
  for (int p = 0; p < cfg.n_paths; ++p) {
    const std::uint64_t pe = cfg.seed ^ static_cast<std::uint64_t>(p);
    out.seeds[static_cast<std::size_t>(p)] = pe;
    NormalSource rng(pe);
    if (cfg.x0) {
      x = *cfg.x0;
    } else {
      double s = 0.0;
      for (auto& v : x) {
        v = rng.normal();
        s += v * v;
      }
      const double r = std::sqrt(s);
      for (auto& v : x) v /= r;
    }
    auto& record = out.norms[static_cast<std::size_t>(p)];
    record[0] = norm2(x);
    std::size_t slot = 1;
    double frozen = record[0];
    for (long long k = 1; k <= steps; ++k) {
      if (out.diverged_at[static_cast<std::size_t>(p)] < 0) {
        const double dw = sqrt_dt * rng.normal();
        matvec_into(drift, x, dx);
        matvec_into(diffusion, x, mx);
        for (int i = 0; i < n; ++i) {
          x[static_cast<std::size_t>(i)] += cfg.dt * dx[static_cast<std::size_t>(i)] +
                                            dw * mx[static_cast<std::size_t>(i)];
        }
        const double nx = norm2(x);
        if (!std::isfinite(nx) || nx > kDivergenceBound) {
          out.diverged_at[static_cast<std::size_t>(p)] = k;
        } else {
          frozen = nx;
        }
      }
      if (k % cfg.record_stride == 0 && slot < samples) {
        record[slot++] = frozen;
      }
    }
  }

  for (long long d : out.diverged_at) {
    if (d >= 0) ++out.excluded_paths;
  }
  out.mean_square.assign(samples, 0.0);
  const int included = cfg.n_paths - out.excluded_paths;
  if (included > 0) {
    std::vector<double> buf;
    buf.reserve(static_cast<std::size_t>(included));
    for (std::size_t s = 0; s < samples; ++s) {
      buf.clear();
      for (int p = 0; p < cfg.n_paths; ++p) {
        if (out.diverged_at[static_cast<std::size_t>(p)] >= 0) continue;
        const double v = out.norms[static_cast<std::size_t>(p)][s];
        buf.push_back(v * v);
      }
      out.mean_square[s] = pairwise_sum(buf) / included;
    }
  }
  return out;
}

double log_slope(const SamplePathEnsemble& ensemble, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw PreconditionError("log_slope: tail_fraction must lie in (0, 1]");
  }
  const std::size_t total = ensemble.times.size();
  if (total < 2 || ensemble.mean_square.size() != total) {
    throw PreconditionError("log_slope: ensemble has no usable grid");
  }
  std::size_t start = static_cast<std::size_t>(
      std::floor((1.0 - tail_fraction) * static_cast<double>(total)));
  if (start > total - 2) start = total - 2;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const auto count = static_cast<double>(total - start);
  for (std::size_t k = start; k < total; ++k) {
    const double ms = ensemble.mean_square[k];
    if (!(ms > 0.0)) {
      throw BreakdownError("log_slope: nonpositive mean square in window");
    }
    const double t = ensemble.times[k];
    const double y = std::log(ms);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double denom = count * stt - st * st;
  if (denom == 0.0) throw BreakdownError("log_slope: degenerate time window");
  return (count * sty - st * sy) / denom;
}

ServoResult simulate_servo(const DenseMatrix& a, const DenseMatrix& m0,
                           std::span<const double> x0, double mu0,
                           double t_end, double dt, int record_stride) {
  if (!a.square() || !m0.square() || a.rows() != m0.rows()) {
    throw PreconditionError("simulate_servo: A and M0 must be square, same size");
  }
  const int n = a.rows();
  if (static_cast<int>(x0.size()) != n) {
    throw PreconditionError("simulate_servo: x0 length mismatch");
  }
  if (!(dt > 0.0) || !(t_end >= dt)) {
    throw PreconditionError("simulate_servo: need 0 < dt <= t_end");
  }
  if (record_stride < 1) {
    throw PreconditionError("simulate_servo: record_stride >= 1");
  }
  double skew = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) skew = std::max(skew, std::abs(m0(i, j) + m0(j, i)));
  }
  if (skew > 1e-8 * std::max(1.0, m0.max_abs())) {
    throw PreconditionError("simulate_servo: M0 is not skew-symmetric");
  }

  const long long steps = std::llround(t_end / dt);
  ServoResult out;
  std::vector<double> x(x0.begin(), x0.end());
  double mu = mu0;

  std::vector<double> ax(static_cast<std::size_t>(n)), mx(static_cast<std::size_t>(n));
  auto deriv = [&](const std::vector<double>& xs, double mus,
                   std::vector<double>& dxs, double& dmus) {
    matvec_into(a, xs, ax);
    matvec_into(m0, xs, mx);
    for (int i = 0; i < n; ++i) {
      dxs[static_cast<std::size_t>(i)] =
          ax[static_cast<std::size_t>(i)] + mus * mx[static_cast<std::size_t>(i)];
    }
    dmus = norm2(xs);
  };

  std::vector<double> k1(static_cast<std::size_t>(n)), k2(k1), k3(k1), k4(k1),
      xt(k1);
  double m1, m2, m3, m4;
  auto record = [&](long long k) {
    out.times.push_back(static_cast<double>(k) * dt);
    out.x_norm.push_back(norm2(x));
    out.mu.push_back(mu);
  };
  record(0);
  for (long long k = 1; k <= steps; ++k) {
    deriv(x, mu, k1, m1);
    for (int i = 0; i < n; ++i)
      xt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + 0.5 * dt * k1[static_cast<std::size_t>(i)];
    deriv(xt, mu + 0.5 * dt * m1, k2, m2);
    for (int i = 0; i < n; ++i)
      xt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + 0.5 * dt * k2[static_cast<std::size_t>(i)];
    deriv(xt, mu + 0.5 * dt * m2, k3, m3);
    for (int i = 0; i < n; ++i)
      xt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + dt * k3[static_cast<std::size_t>(i)];
    deriv(xt, mu + dt * m3, k4, m4);
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] +=
          dt / 6.0 *
          (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)] +
           2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
    }
    mu += dt / 6.0 * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
    const double nx = norm2(x);
    if (!std::isfinite(nx) || nx > kDivergenceBound || !std::isfinite(mu)) {
      out.diverged = true;
      record(k);
      break;
    }
    if (k % record_stride == 0 || k == steps) record(k);
  }
  return out;
}

void write_ensemble_csv(std::ostream& out, const SamplePathEnsemble& e) {
  out << 't';
  for (std::size_t p = 0; p < e.norms.size(); ++p) out << ",path_" << p;
  out << ",mean_square\n";
  for (std::size_t s = 0; s < e.times.size(); ++s) {
    out << format_entry(e.times[s]);
    for (const auto& path : e.norms) out << ',' << format_entry(path[s]);
    out << ',' << format_entry(e.mean_square[s]) << '\n';
  }
}

void write_ensemble_metadata_json(std::ostream& out, const SdeConfig& cfg,
                                  const SamplePathEnsemble& e) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["generator"] = e.generator;
  j["seed_derivation"] = "path p uses seed XOR p";
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["mu"] = cfg.mu;
  j["n_paths"] = cfg.n_paths;
  j["record_stride"] = cfg.record_stride;
  j["samples"] = e.times.size();
  j["excluded_paths"] = e.excluded_paths;
  j["diverged_at"] = e.diverged_at;
  out << j.dump(2) << '\n';
}

}  // namespace hollowstab
