#include "gaussgeom/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gaussgeom {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `body`, which fills measured/tol/pass, and stamps name, digest and time.
CheckRecord timed(const std::string& name, const std::string& inputs, const std::function<void(CheckRecord&)>& body) {
  CheckRecord rec;
  rec.name = name;
  rec.digest = fnv1a_hex(name + "|" + inputs);
  const auto start = Clock::now();
  body(rec);
  rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rec;
}

void below(CheckRecord& rec, double measured, double tol) {
  rec.measured = measured;
  rec.tol = tol;
  rec.pass = measured < tol;
}

std::string describe(const RunConfig& cfg) {
  std::ostringstream s;
  s.precision(17);
  s << "n=" << cfg.n << ";seed=" << cfg.seed << ";alpha=" << cfg.alpha << ";abc=" << cfg.abc[0] << ','
    << cfg.abc[1] << ',' << cfg.abc[2] << ";trials=" << cfg.trials << ";samples=" << cfg.samples
    << ";step=" << cfg.scheme().step << ";fault=" << cfg.fault;
  return s.str();
}

InvariantCubic with_fault(InvariantCubic c, const RunConfig& cfg) {
  if (cfg.fault == "c2-weight") c.c2_weight = 0.5;
  return c;
}

std::vector<SpdPoint> verification_points(const RunConfig& cfg, std::uint64_t tag) {
  std::vector<SpdPoint> pts{SpdPoint::identity(cfg.n)};
  const int random_points = cfg.trials / 10;
  for (int i = 0; i < random_points; ++i)
    pts.emplace_back(sample_spd(cfg.n, derive_seed(cfg.seed, tag + static_cast<std::uint64_t>(i))));
  return pts;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void RunConfig::validate() const {
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  if (!(tol_geom > 0.0) || !(tol_exact > 0.0)) throw std::invalid_argument("tolerances must be > 0");
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (fd_step && !(*fd_step >= 1e-8 && *fd_step <= 1e-2))
    throw std::invalid_argument("--fd-step must lie in [1e-8, 1e-2]");
  if (!std::isfinite(alpha) || !std::all_of(abc.begin(), abc.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("alpha and abc must be finite");
  if (!fault.empty() && fault != "c2-weight") throw std::invalid_argument("unknown fault '" + fault + "'");
}

FdScheme RunConfig::scheme() const {
  FdScheme s;
  if (fd_step) s.step = *fd_step;
  return s;
}

Json RunConfig::to_json() const {
  Json j;
  j["n"] = n;
  j["alpha"] = alpha;
  j["abc"] = abc;
  j["seed"] = seed;
  j["tol_geom"] = tol_geom;
  j["tol_exact"] = tol_exact;
  j["samples"] = samples;
  j["fd_step"] = scheme().step;
  j["trials"] = trials;
  return j;
}

double fisher_invariance_error(const GroupElement& h, const SpdPoint& sigma, const SymMat& x, const SymMat& y) {
  using LMat = kernels::Mat<long double>;
  const LMat hl = h.mat().cast<long double>();
  const LMat s = sigma.full().cast<long double>();
  const LMat xl = x.full().cast<long double>();
  const LMat yl = y.full().cast<long double>();
  auto push = [&](const LMat& m) { return LMat(hl * m * hl.transpose()); };
  const long double ref = kernels::fisher(s, xl, yl);
  const long double moved = kernels::fisher(push(s), push(xl), push(yl));
  const long double bound = std::sqrt(kernels::fisher(s, xl, xl) * kernels::fisher(s, yl, yl));
  const long double scale = std::max(bound, std::abs(ref));
  return static_cast<double>(scale > 0 ? std::abs(moved - ref) / scale : std::abs(moved - ref));
}

double cubic_invariance_error(const InvariantCubic& cubic, const GroupElement& h, const SpdPoint& sigma,
                              const SymMat& x, const SymMat& y, const SymMat& z) {
  using L = long double;
  using LMat = kernels::Mat<L>;
  const LMat hl = h.mat().cast<L>();
  const LMat s = sigma.full().cast<L>();
  const LMat xl = x.full().cast<L>();
  const LMat yl = y.full().cast<L>();
  const LMat zl = z.full().cast<L>();
  auto push = [&](const LMat& m) { return LMat(hl * m * hl.transpose()); };
  const L a = cubic.a, b = cubic.b, c = cubic.c, w2 = cubic.c2_weight;
  const L ref = kernels::cubic(a, b, c, w2, s, xl, yl, zl);
  const L moved = kernels::cubic(a, b, c, w2, push(s), push(xl), push(yl), push(zl));

  const kernels::Whiten<L> w(s);
  const LMat wx = w(xl), wy = w(yl), wz = w(zl);
  const L fx = wx.norm(), fy = wy.norm(), fz = wz.norm();
  const L tx = std::abs(wx.trace()), ty = std::abs(wy.trace()), tz = std::abs(wz.trace());
  const L bound = std::abs(a) * fx * fy * fz + std::abs(b * w2) * (tx * fy * fz + ty * fx * fz + tz * fx * fy) +
                  std::abs(c) * tx * ty * tz;
  const L scale = std::max(bound, std::abs(ref));
  return static_cast<double>(scale > 0 ? std::abs(moved - ref) / scale : std::abs(moved - ref));
}

Report run_verify(const RunConfig& cfg) {
  cfg.validate();
  Report report;
  report.suite = "verify";
  report.config = cfg.to_json();
  const std::string inputs = describe(cfg);
  const int n = cfg.n;
  const FdScheme scheme = cfg.scheme();
  const InvariantCubic ac = with_fault(InvariantCubic::amari_chentsov(n, cfg.alpha), cfg);
  const InvariantCubic abc = with_fault(InvariantCubic{n, cfg.abc[0], cfg.abc[1], cfg.abc[2]}, cfg);
  const TensorField g = fisher_field(n);

  report.records.push_back(timed("basis-roundtrip", inputs, [&](CheckRecord& rec) {
    const VechBasis basis = sym_basis(n);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const SymMat m = sample_sym(n, derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(t)));
      worst = std::max(worst, max_abs_diff(SymMat::from_vech(n, m.vech()).full(), m.full()));
      SymMat rebuilt = SymMat::zero(n);
      for (int a = 0; a < basis.dim(); ++a) rebuilt = rebuilt + m.vech()[a] * basis[a];
      worst = std::max(worst, max_abs_diff(rebuilt.full(), m.full()));
    }
    below(rec, worst, cfg.tol_exact);
  }));

  report.records.push_back(timed("fisher-positive-definite", inputs, [&](CheckRecord& rec) {
    double worst = 1.0;
    for (const auto& p : verification_points(cfg, 200)) {
      const ComponentArray gram = g.eval(p);
      Matrix m(gram.dim(), gram.dim());
      for (int a = 0; a < gram.dim(); ++a)
        for (int b = 0; b < gram.dim(); ++b) m(a, b) = gram.at({a, b});
      const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
      worst = std::min(worst, ev.minCoeff() / ev.maxCoeff());
    }
    rec.measured = worst;
    rec.tol = 0.0;
    rec.pass = worst > 0.0;
  }));

  report.records.push_back(timed("g-invariance[fisher]", inputs, [&](CheckRecord& rec) {
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t s = derive_seed(cfg.seed, 300 + static_cast<std::uint64_t>(t));
      worst = std::max(worst, fisher_invariance_error(sample_general_linear(n, s), SpdPoint(sample_spd(n, s)),
                                                      sample_sym(n, s + 1), sample_sym(n, s + 2)));
    }
    below(rec, worst, cfg.tol_exact);
  }));

  report.records.push_back(timed("g-invariance[ac-alpha]", inputs, [&](CheckRecord& rec) {
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t s = derive_seed(cfg.seed, 400 + static_cast<std::uint64_t>(t));
      worst = std::max(worst, cubic_invariance_error(ac, sample_general_linear(n, s), SpdPoint(sample_spd(n, s)),
                                                     sample_sym(n, s + 1), sample_sym(n, s + 2),
                                                     sample_sym(n, s + 3)));
    }
    below(rec, worst, cfg.tol_exact);
  }));

  report.records.push_back(timed("on-invariance[ac-alpha]", inputs, [&](CheckRecord& rec) {
    const Verdict v = on_invariance_check(raw_components(ac), cfg.trials, derive_seed(cfg.seed, 500), cfg.tol_exact);
    below(rec, v.max_violation, v.tol);
  }));

  report.records.push_back(timed("on-invariance[abc]", inputs, [&](CheckRecord& rec) {
    const Verdict v = on_invariance_check(raw_components(abc), cfg.trials, derive_seed(cfg.seed, 501), cfg.tol_exact);
    below(rec, v.max_violation, v.tol);
  }));

  // q_{C1} = tr X^3, q_{C2} = tr X^2 tr X, q_{C3} = (tr X)^3
  report.records.push_back(timed("generator-cubic-forms", inputs, [&](CheckRecord& rec) {
    const std::array<RawCubicTensor, 3> raws{raw_components(with_fault({n, 1, 0, 0}, cfg)),
                                             raw_components(with_fault({n, 0, 1, 0}, cfg)),
                                             raw_components(with_fault({n, 0, 0, 1}, cfg))};
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const SymMat x = sample_sym(n, derive_seed(cfg.seed, 600 + static_cast<std::uint64_t>(t)));
      const Matrix xf = x.full();
      const double tr1 = xf.trace();
      const double tr2 = (xf * xf).trace();
      const std::array<double, 3> expected{(xf * xf * xf).trace(), tr2 * tr1, tr1 * tr1 * tr1};
      for (std::size_t i = 0; i < 3; ++i) {
        const double err = std::abs(cubic_form(raws[i], x) - expected[i]) / std::max(1.0, std::abs(expected[i]));
        worst = std::max(worst, err);
      }
    }
    below(rec, worst, cfg.tol_exact);
  }));

  const std::vector<SpdPoint> points = verification_points(cfg, 700);
  const std::array<std::pair<std::string, InvariantCubic>, 2> fields{std::pair{std::string("ac-alpha"), ac},
                                                                     std::pair{std::string("abc"), abc}};
  for (const auto& [label, cubic] : fields) {
    const TensorField c = invariant_cubic_field(cubic);
    report.records.push_back(timed("conjugate-symmetry[" + label + "]", inputs, [&](CheckRecord& rec) {
      double worst = 0.0;
      for (const auto& p : points)
        worst = std::max(worst, conjugate_symmetry_check(c, g, p, scheme, cfg.tol_geom).max_violation);
      below(rec, worst, cfg.tol_geom);
    }));
    report.records.push_back(timed("parallel[" + label + "]", inputs, [&](CheckRecord& rec) {
      double worst = 0.0;
      for (const auto& p : points) worst = std::max(worst, parallel_check(c, g, p, scheme, cfg.tol_geom).max_violation);
      below(rec, worst, cfg.tol_geom);
    }));
  }

  report.records.push_back(timed("metric-compatibility", inputs, [&](CheckRecord& rec) {
    double worst = 0.0;
    for (const auto& p : points)
      worst = std::max(worst, metric_compatibility_check(g, p, scheme, cfg.tol_geom).max_violation);
    below(rec, worst, cfg.tol_geom);
  }));

  report.records.push_back(timed("canonical-vs-levi-civita", inputs, [&](CheckRecord& rec) {
    const TensorField c = invariant_cubic_field(abc);
    const SpdPoint id = SpdPoint::identity(n);
    const ComponentArray nabla = cov_deriv(c, g, id, scheme);
    const double scale = field_scale(c, id);
    double worst = 0.0;
    for (int t = 0; t < std::max(1, cfg.trials / 10); ++t) {
      const SymMat v = sample_sym(n, derive_seed(cfg.seed, 800 + static_cast<std::uint64_t>(t)));
      const ComponentArray cn = canonical_deriv(c, v, scheme);
      const ComponentArray lc = contract_direction(nabla, v);
      worst = std::max({worst, cn.max_abs() / scale, (cn - lc).max_abs() / scale,
                        canonical_deriv(g, v, scheme).max_abs() / field_scale(g, id)});
    }
    below(rec, worst, cfg.tol_geom);
  }));

  report.records.push_back(timed("phi-eta", inputs, [&](CheckRecord& rec) {
    below(rec, phi_eta_check(SymMat::identity(n), 1e-4), 1e-6);
  }));

  report.records.push_back(timed("phi-eta-order", inputs, [&](CheckRecord& rec) {
    const SymMat a = sample_sym(n, derive_seed(cfg.seed, 900));
    const double ratio = phi_eta_check(a, 1e-3) / phi_eta_check(a, 5e-4);
    below(rec, std::abs(ratio - 4.0), 0.5);
  }));

  const Report mc = run_mc_check(cfg);
  for (const auto& rec : mc.records) report.records.push_back(rec);
  report.extra["mc_estimates"] = mc.extra.at("estimates");
  return report;
}

DecomposeResult run_decompose(const RawCubicTensor& input, const RunConfig& cfg) {
  DecomposeResult result;
  Report& report = result.report;
  report.suite = "decompose";
  report.config = cfg.to_json();
  report.config["n"] = input.n;
  const std::string inputs = report.config.dump() + "|" + to_json(input).dump();

  report.records.push_back(timed("symmetry", inputs, [&](CheckRecord& rec) {
    below(rec, input.components.max_asymmetry(), cfg.tol_exact);
  }));
  report.records.push_back(timed("on-invariance", inputs, [&](CheckRecord& rec) {
    const Verdict v = on_invariance_check(input, cfg.trials, derive_seed(cfg.seed, 1000), cfg.tol_exact);
    below(rec, v.max_violation, v.tol);
  }));
  if (!report.overall_pass()) return result;

  const SymCubicPoly poly = decompose(input);
  report.records.push_back(timed("reconstruction", inputs, [&](CheckRecord& rec) {
    const RawCubicTensor rebuilt = raw_components(phi_inverse(poly));
    const double dev = (rebuilt.components - input.components).max_abs();
    below(rec, dev / std::max(1.0, input.components.max_abs()), cfg.tol_exact);
  }));
  report.extra["polynomial"] = to_json(poly);
  report.extra["reconstruction_max_deviation"] = report.records.back().measured;
  if (report.overall_pass()) result.polynomial = poly;
  return result;
}

Report run_dims(int max_n) {
  if (max_n < 1) throw std::invalid_argument("--max-n must be >= 1");
  Report report;
  report.suite = "dims";
  report.config["max_n"] = max_n;
  Json table = Json::array();
  for (int n = 1; n <= max_n; ++n) {
    Json row;
    row["n"] = n;
    row["dimension"] = dimension(n);
    table.push_back(std::move(row));
  }
  report.extra["table"] = std::move(table);
  return report;
}

Report run_mc_check(const RunConfig& cfg) {
  cfg.validate();
  Report report;
  report.suite = "mc-check";
  report.config = cfg.to_json();
  const std::string inputs = describe(cfg);
  const int n = cfg.n;
  Json estimates = Json::array();

  const std::array<std::pair<std::string, SpdPoint>, 2> points{
      std::pair{std::string("identity"), SpdPoint::identity(n)},
      std::pair{std::string("random"), SpdPoint(sample_spd(n, derive_seed(cfg.seed, 1100)))}};
  std::uint64_t tag = 1200;
  for (const auto& [label, sigma] : points) {
    std::vector<SymMat> dirs;
    for (int i = 0; i < 3; ++i) dirs.push_back(sample_sym(n, derive_seed(cfg.seed, tag++)));
    for (const int arity : {2, 3}) {
      const std::string name = std::string(arity == 2 ? "mc-fisher[" : "mc-ac[") + label + "]";
      report.records.push_back(timed(name, inputs, [&](CheckRecord& rec) {
        McConfig mcfg;
        mcfg.samples = cfg.samples;
        mcfg.seed = derive_seed(cfg.seed, tag++);
        mcfg.threads = cfg.threads;
        const std::vector<SymMat> used(dirs.begin(), dirs.begin() + arity);
        const McEstimate est = mc_moment(sigma, used, mcfg);
        const double closed = arity == 2 ? fisher_at(sigma, dirs[0], dirs[1])
                                         : ac_alpha_at({1.0}, sigma, dirs[0], dirs[1], dirs[2]);
        const double z = est.std_error > 0.0 ? std::abs(est.mean - closed) / est.std_error
                                             : (est.mean == closed ? 0.0 : INFINITY);
        below(rec, z, 5.0);
        Json e = to_json(est);
        e["check"] = name;
        e["closed_form"] = closed;
        estimates.push_back(std::move(e));
      }));
    }
  }
  report.extra["estimates"] = std::move(estimates);
  return report;
}

}  // namespace gaussgeom
