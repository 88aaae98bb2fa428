#include "gaussgeom/gaussian_geometry.hpp"

#include "gaussgeom/connections.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace gaussgeom {

namespace {

void require_same_order(int n, const SymMat& x) {
  if (x.n() != n)
    throw ShapeError("order mismatch: expected " + std::to_string(n) + ", got " + std::to_string(x.n()));
}

// Welford/Chan accumulator.
struct RunningStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0) return;
    const auto total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) /
                     static_cast<double>(total);
    count = total;
  }
};

}  // namespace

Matrix Whitener::operator()(const SymMat& x) const {
  require_same_order(n_, x);
  return whiten_(x.full());
}

double fisher_at(const SpdPoint& sigma, const SymMat& x, const SymMat& y) {
  const Whitener w(sigma);
  return 0.5 * trace_product(w(x), w(y));
}

double ac_alpha_at(AlphaParam alpha, const SpdPoint& sigma, const SymMat& x, const SymMat& y,
                   const SymMat& z) {
  const Whitener w(sigma);
  return alpha.alpha * trace_product(w(x), w(y), w(z));
}

double directional_score(const SpdPoint& sigma, const SymMat& dir, const Vector& x) {
  require_same_order(sigma.n(), dir);
  if (x.size() != sigma.n()) throw ShapeError("sample vector has the wrong length");
  Eigen::LLT<Matrix> llt(sigma.full());
  const Vector u = llt.solve(x);                       // S x
  const Matrix sx = llt.solve(dir.full());             // S X
  return 0.5 * u.dot(dir.full() * u) - 0.5 * sx.trace();
}

TensorField fisher_field(int n) {
  const VechBasis basis = sym_basis(n);
  TensorField f;
  f.valence = 2;
  f.n = n;
  // Extended precision: finite differences of these components divide their
  // rounding error by the step, and whitening in double costs cond(Sigma) * eps.
  f.eval = [basis](const SpdPoint& sigma) {
    using LD = long double;
    const kernels::Whiten<LD> w(sigma.full().cast<LD>());
    const int d = basis.dim();
    std::vector<kernels::Mat<LD>> wb;
    wb.reserve(static_cast<std::size_t>(d));
    for (const auto& e : basis.elements) wb.push_back(w(e.full().cast<LD>()));
    ComponentArray g(2, d);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        const auto v = static_cast<double>(
            LD(0.5) * kernels::trace2(wb[static_cast<std::size_t>(a)], wb[static_cast<std::size_t>(b)]));
        g.at({a, b}) = v;
        g.at({b, a}) = v;
      }
    return g;
  };
  f.christoffel = [](const SpdPoint& sigma) { return christoffel_closed_data(sigma).gamma; };
  return f;
}

SpdPoint act(const GroupElement& h, const SpdPoint& sigma) {
  if (h.n() != sigma.n()) throw ShapeError("order mismatch between group element and point");
  return SpdPoint(SymMat::symmetrized(h.mat() * sigma.full() * h.mat().transpose()));
}

SymMat pushforward(const GroupElement& h, const SymMat& x) {
  if (h.n() != x.n()) throw ShapeError("order mismatch between group element and tangent vector");
  return SymMat::symmetrized(h.mat() * x.full() * h.mat().transpose());
}

McEstimate mc_mean(const SpdPoint& sigma, const std::function<double(const Vector&)>& f,
                   const McConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("McConfig.samples must be >= 1");
  if (cfg.chunk < 1) throw std::invalid_argument("McConfig.chunk must be >= 1");
  const int n = sigma.n();
  const Matrix root = sym_sqrt(sigma).mat();
  const std::int64_t chunks = (cfg.samples + cfg.chunk - 1) / cfg.chunk;
  std::vector<RunningStats> partial(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](std::int64_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::int64_t begin = c * cfg.chunk;
    const std::int64_t end = std::min(cfg.samples, begin + cfg.chunk);
    RunningStats stats;
    Vector z(n);
    for (std::int64_t s = begin; s < end; ++s) {
      for (int i = 0; i < n; ++i) z[i] = normal(rng);
      stats.push(f(root * z));
    }
    partial[static_cast<std::size_t>(c)] = stats;
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || chunks == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::int64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  RunningStats total;
  for (const auto& p : partial) total.merge(p);
  McEstimate est;
  est.samples = total.count;
  est.mean = total.mean;
  const double var = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  est.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(total.count));
  return est;
}

McEstimate mc_moment(const SpdPoint& sigma, const std::vector<SymMat>& dirs, const McConfig& cfg) {
  if (dirs.size() != 2 && dirs.size() != 3)
    throw ArityError("mc_moment takes 2 or 3 directions, got " + std::to_string(dirs.size()));
  for (const auto& d : dirs) require_same_order(sigma.n(), d);

  // Per direction: X itself and tr(S X); per sample: u = S x, score = (u^T X u - tr(SX)) / 2.
  Eigen::LLT<Matrix> llt(sigma.full());
  std::vector<Matrix> full;
  std::vector<double> tr_sx;
  for (const auto& d : dirs) {
    full.push_back(d.full());
    tr_sx.push_back(llt.solve(full.back()).trace());
  }
  auto product_of_scores = [&](const Vector& x) {
    const Vector u = llt.solve(x);
    double prod = 1.0;
    for (std::size_t i = 0; i < full.size(); ++i) prod *= 0.5 * (u.dot(full[i] * u) - tr_sx[i]);
    return prod;
  };
  return mc_mean(sigma, product_of_scores, cfg);
}

}  // namespace gaussgeom
