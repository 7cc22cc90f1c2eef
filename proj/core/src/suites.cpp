#include "weightlab/suites.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "weightlab/errors.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/parallel.hpp"
#include "weightlab/weightclass.hpp"

namespace weightlab {

std::string to_string(Basis b) {
  switch (b) {
    case Basis::reference: return "reference";
    case Basis::trivial: return "trivial";
    case Basis::derived: return "derived";
  }
  return "?";
}

bool SuiteResult::passed() const { return first_failure() == nullptr; }

const Check* SuiteResult::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

std::string SuiteResult::render() const {
  std::ostringstream os;
  os.precision(10);
  os << "suite " << id << ": " << (passed() ? "PASS" : "FAIL") << " (" << checks.size() << " checks, "
     << seconds << " s)\n";
  for (const auto& c : checks) {
    os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << " = " << c.value << "  (" << c.relation
       << "; " << to_string(c.basis) << ")\n";
  }
  return os.str();
}

SegmentWeight1D spike_weight(int K) {
  if (K < 2) throw ConfigurationError("spike weight needs K >= 2");
  std::vector<Segment> segs;
  double lo = -1.0;
  for (int k = 1; k <= K; ++k) {
    const double c = std::ldexp(1.0, 2 * k - 1);
    const double hi = 3.0 * c;
    segs.push_back(Segment::power(lo, hi, 1.0, c, -0.5));
    lo = hi;
  }
  return SegmentWeight1D(std::move(segs), Tail::extend);
}

SegmentWeight1D exp_weight(double p, double L) {
  if (!(p > 1.0)) throw ConfigurationError("exponential example needs p > 1");
  return SegmentWeight1D({Segment::exponential(-L, 0.0, 1.0, -(p - 1.0)), Segment::exponential(0.0, L, 1.0, p - 1.0)},
                         Tail::zero);
}

SegmentWeight1D integer_spike_weight(int K) {
  if (K < 1) throw ConfigurationError("integer spike weight needs K >= 1");
  std::vector<Segment> segs{Segment::power(-1.0, 0.5, 1.0, 0.0, -0.5)};
  for (int k = 1; k <= K; ++k) segs.push_back(Segment::power(k - 0.5, k + 0.5, 1.0, k, -0.5));
  return SegmentWeight1D(std::move(segs), Tail::extend);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double j_h(double p, double h) {
  const double e = -std::expm1(-h);
  return 2.0 / (p + 1.0) * (-std::expm1(-(p + 1.0) * h / 2.0)) / e * std::pow(std::exp(-h / 2.0) * h / e, p - 1.0);
}

double ap_mu_closed_form(double p, double h) {
  const double e = -std::expm1(-h);
  return (-std::expm1(-p * h)) / (p * std::pow(e, p)) * std::pow(h, p - 1.0);
}

namespace {

using Clock = std::chrono::steady_clock;

Check check(std::string name, std::string description, double value, std::string relation, bool passed,
            Basis basis, std::vector<std::pair<std::string, double>> inputs = {}) {
  return Check{std::move(name), std::move(description), value, std::move(relation), passed, basis, std::move(inputs)};
}

double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

Cube interval(double lo, double hi) { return Cube{1, {lo, 0.0}, hi - lo}; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SuiteResult suite_prop41(const SquareMatrix& A) {
  const auto t0 = Clock::now();
  SuiteResult r;
  r.id = "prop41";
  const SegmentWeight1D w = spike_weight(9);
  const SegmentWeight1D wa = compose_matrix(w, A);
  auto c = [](int k) { return std::ldexp(1.0, 2 * k - 1); };
  auto ak = [&](int k) { return k == 0 ? 0.0 : 3.0 * c(k); };
  const double lam = A.as_scalar();

  int inside = 0;
  double max_err = 0.0, min_ratio = INFINITY;
  std::vector<double> ks, logs;
  for (int k = 1; k <= 6; ++k) {
    const double lo = 2.0 * c(k), hi = lo + 0.25;
    const bool own = lo > ak(k - 1) && hi < ak(k);
    const bool image = 2.0 * lo > ak(k) && 2.0 * hi < ak(k + 1);
    inside += own && image;
    max_err = std::max(max_err, std::abs(wa.mass(lo, hi) - std::sqrt(0.5)));
    min_ratio = std::min(min_ratio, power_mass(w, -1.0, Measure::lebesgue, lo, hi) / (0.25 * std::sqrt(c(k))));
    ks.push_back(k);
    logs.push_back(std::log2(aap_product(w, A, interval(lo, hi), 2.0)));
  }
  const double slope = least_squares_slope(ks, logs);

  r.checks.push_back(check("intervals", "T_k inside (a_{k-1}, a_k) and 2T_k inside (a_k, a_{k+1}), k = 1..6",
                           inside, "== 6", inside == 6, Basis::reference));
  r.checks.push_back(check("dilated_mass", "max_k |∫_{T_k} w(lambda x) dx - 2^{-1/2}|, k = 1..6", max_err,
                           "<= 1e-10", max_err <= 1e-10, Basis::reference, {{"lambda", lam}}));
  r.checks.push_back(check("dual_mass_bound", "min_k ∫_{T_k} w^{-1} / (|T_k| c_k^{1/2}), k = 1..6", min_ratio,
                           ">= 1", min_ratio >= 1.0, Basis::reference));
  r.checks.push_back(check("growth_slope", "least-squares slope of log2 A_{A,2} product on T_k against k",
                           slope, "in [0.9, 1.1]", std::abs(slope - 1.0) <= 0.1, Basis::reference,
                           {{"lambda", lam}, {"k_min", 1}, {"k_max", 6}}));

  const Cube box = interval(0.0, ak(6));
  std::vector<Cube> extra;
  for (int k = 1; k <= 6; ++k) {
    for (double s : {1.0 / 64, 1.0 / 16, 0.25, 1.0, 4.0, 16.0, 64.0}) {
      for (auto [lo, hi] : {std::pair{c(k) - s, c(k) + s}, std::pair{c(k), c(k) + s}, std::pair{c(k) - s, c(k)}}) {
        if (lo >= 0.0 && hi <= ak(6)) extra.push_back(interval(lo, hi));
      }
    }
  }
  const CubeFamily F(box, 0, 6, 2, extra);
  const std::size_t count = F.cubes().size();
  const ConstantReport ap = constant(w, ClassSpec::Ap(2.0), F);
  r.checks.push_back(check("ap_bounded", "[w]_{A_2} over a family of cubes in (0, a_6)", ap.value,
                           "finite and < 100 on >= 300 cubes", std::isfinite(ap.value) && ap.value < 100.0 && count >= 300,
                           Basis::derived, {{"cubes", static_cast<double>(count)}, {"argmax_corner", ap.argmax.corner[0]},
                                            {"argmax_side", ap.argmax.side}}));
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_prop42(double p) {
  if (!(p > 1.0)) throw ConfigurationError("the non-doubling suite needs p > 1");
  const auto t0 = Clock::now();
  SuiteResult r;
  r.id = "prop42";
  const SegmentWeight1D w = exp_weight(p);
  const SquareMatrix A = SquareMatrix::scalar(0.5);
  const Measure mu = Measure::exp_abs;
  const std::vector<double> hs{0.01, 0.1, 1.0, 5.0, 20.0};

  double err_mu = 0.0;
  for (double a : {0.0, 0.5, 2.0}) {
    for (double h : hs) {
      err_mu = std::max(err_mu, rel_err(measure_mass(mu, a, a + h), std::exp(a + h) * -std::expm1(-h)));
      err_mu = std::max(err_mu, rel_err(power_mass(w, -1.0 / (p - 1.0), mu, a, a + h), h));
    }
  }
  r.checks.push_back(check("exact_masses", "mu(R_h) and ∫_{R_h} w^{-1/(p-1)} dmu against closed forms (max relative error)",
                           err_mu, "<= 1e-10", err_mu <= 1e-10, Basis::reference, {{"p", p}}));

  double err_j = 0.0;
  for (double h : hs) err_j = std::max(err_j, rel_err(aap_product(w, A, interval(0.0, h), p, mu), j_h(p, h)));
  r.checks.push_back(check("product_equals_j", "A_{A,p}(mu) product on (0, h) against J_h (max relative error)", err_j,
                           "<= 1e-8", err_j <= 1e-8, Basis::reference, {{"p", p}}));

  const double j_small = j_h(p, 0.001);
  r.checks.push_back(check("j_small_h", "J_h at h = 0.001", j_small, "in [0.98, 1.02]", std::abs(j_small - 1.0) <= 0.02,
                           Basis::reference, {{"p", p}, {"h", 0.001}}));
  const double j_large = j_h(p, 50.0);
  r.checks.push_back(check("j_large_h", "J_h at h = 50", j_large, "< 1e-3", j_large < 1e-3, Basis::reference,
                           {{"p", p}, {"h", 50.0}}));

  double worst = 0.0;
  for (double a : {0.25, 1.0, 4.0, 10.0}) {
    for (double h : hs) worst = std::max(worst, aap_product(w, A, interval(a, a + h), p, mu) / j_h(p, h));
  }
  r.checks.push_back(check("shift_monotone", "max over a > 0 of the A_{A,p}(mu) product on (a, a + h) divided by J_h",
                           worst, "<= 1 + 1e-8", worst <= 1.0 + 1e-8, Basis::reference, {{"p", p}}));

  double err_ap = 0.0;
  std::vector<double> log_h, log_v;
  for (double h : {0.01, 0.1, 1.0, 5.0, 10.0, 20.0, 25.0, 50.0}) {
    const double v = ap_product(w, interval(0.0, h), p, mu);
    err_ap = std::max(err_ap, rel_err(v, ap_mu_closed_form(p, h)));
    if (h >= 5.0) {
      log_h.push_back(std::log(h));
      log_v.push_back(std::log(v));
    }
  }
  r.checks.push_back(check("ap_closed_form", "A_p(mu) product on (0, h) against its closed form (max relative error)",
                           err_ap, "<= 1e-8", err_ap <= 1e-8, Basis::reference, {{"p", p}}));
  // the product behaves like h^{p-1}/p, so it is unbounded in h
  const double growth = least_squares_slope(log_h, log_v);
  r.checks.push_back(check("ap_unbounded", "slope of log A_p(mu) product on (0, h) against log h, h in [5, 50]", growth,
                           "within 0.1 of p - 1", std::abs(growth - (p - 1.0)) <= 0.1, Basis::derived, {{"p", p}}));
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_prop43() {
  const auto t0 = Clock::now();
  SuiteResult r;
  r.id = "prop43";
  const SegmentWeight1D w = integer_spike_weight(12);
  const SquareMatrix A = SquareMatrix::scalar(-1.0);
  const SegmentWeight1D wa = compose_matrix(w, A);

  double max_err = 0.0, min_ratio = INFINITY;
  std::vector<double> logk, logp, logi;
  for (int k = 1; k <= 8; ++k) {
    const double lo = -k - 0.25, hi = -static_cast<double>(k);
    max_err = std::max(max_err, std::abs(wa.mass(lo, hi) - 1.0));
    min_ratio = std::min(min_ratio, power_mass(w, -1.0, Measure::lebesgue, lo, hi) / (std::sqrt(k) * 0.25));
    logk.push_back(std::log(k));
    logp.push_back(std::log(aap_product(w, A, interval(lo, hi), 2.0)));
    logi.push_back(std::log(ap_product(w, interval(lo, hi), 2.0)));
  }
  const double slope = least_squares_slope(logk, logp);
  const double slope_id = least_squares_slope(logk, logi);
  r.checks.push_back(check("reflected_mass", "max_k |∫_{J_k} w(-x) dx - 1|, k = 1..8", max_err, "<= 1e-10",
                           max_err <= 1e-10, Basis::reference));
  r.checks.push_back(check("dual_mass_bound", "min_k ∫_{J_k} w^{-1} / (k^{1/2} |J_k|), k = 1..8", min_ratio, ">= 1",
                           min_ratio >= 1.0, Basis::reference));
  r.checks.push_back(check("growth_slope", "least-squares slope of log A_{-I,2} product on J_k against log k", slope,
                           "in [0.35, 0.65]", std::abs(slope - 0.5) <= 0.15, Basis::derived));

  std::vector<Cube> extra;
  for (int k = 1; k <= 8; ++k) {
    extra.push_back(interval(-k - 0.25, -k));
    extra.push_back(interval(k, k + 0.25));
    for (double s : {1.0 / 16, 0.25, 0.5}) {
      extra.push_back(interval(k - s, k + s));
      extra.push_back(interval(-k - s, -k + s));
    }
  }
  const CubeFamily F(interval(-10.24, 10.24), 0, 6, 2, extra);
  const std::size_t count = F.cubes().size();
  const ConstantReport ap = constant(w, ClassSpec::Ap(2.0), F);
  r.checks.push_back(check("ap_bounded", "[w]_{A_2} over a family containing every J_k", ap.value,
                           "finite and < 100 on >= 300 cubes", std::isfinite(ap.value) && ap.value < 100.0 && count >= 300,
                           Basis::derived, {{"cubes", static_cast<double>(count)}}));
  r.checks.push_back(check("identity_control", "slope of log A_2 product (A = I) on J_k against log k", slope_id,
                           "|slope| <= 0.1", std::abs(slope_id) <= 0.1, Basis::derived));
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const TheoremConfig& cfg) {
  std::vector<std::string> ids;
  for (const auto& n : names) {
    if (n == "all") {
      ids.insert(ids.end(), {"prop41", "prop42", "prop43", "theorems"});
    } else if (n == "prop41" || n == "prop42" || n == "prop43" || n == "theorems") {
      ids.push_back(n);
    } else {
      throw std::invalid_argument("unknown suite '" + n + "'");
    }
  }
  auto run = [&cfg](const std::string& id) {
    if (id == "prop41") return suite_prop41();
    if (id == "prop42") return suite_prop42(2.0);
    if (id == "prop43") return suite_prop43();
    return suite_theorems(cfg);
  };
  std::vector<SuiteResult> out;
  if (worker_count() <= 1) {
    for (const auto& id : ids) out.push_back(run(id));
    return out;
  }
  std::vector<std::future<SuiteResult>> futures;
  for (const auto& id : ids) futures.push_back(std::async(std::launch::async, run, id));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace weightlab
