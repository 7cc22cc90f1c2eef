#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/matrix.hpp"
#include "weightlab/segment_weight.hpp"

namespace weightlab {

/// Where an expected relation comes from: a value stated in the reference
/// text, an immediate identity, or a value computed independently.
enum class Basis { reference, trivial, derived };
std::string to_string(Basis b);

struct Check {
  std::string name;
  std::string description;
  double value = 0.0;
  std::string relation;
  bool passed = false;
  Basis basis = Basis::derived;
  std::vector<std::pair<std::string, double>> inputs;
};

struct SuiteResult {
  std::string id;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  const Check* first_failure() const;
  std::string render() const;
};

// Example weights.
/// |x - c_k|^{-1/2} on (a_{k-1}, a_k), c_k = 2^{2k-1}, a_k = 3 2^{2k-1}, k <= K, tails extended.
SegmentWeight1D spike_weight(int K = 9);
/// e^{(p-1)|x|} on (-L, L).
SegmentWeight1D exp_weight(double p, double L = 120.0);
/// |x|^{-1/2} on (-inf, 1/2), |x - k|^{-1/2} on [k - 1/2, k + 1/2) for k <= K.
SegmentWeight1D integer_spike_weight(int K = 12);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// J_h from the non-doubling example.
double j_h(double p, double h);
/// Closed form of the A_p(mu) product for e^{(p-1)|x|} on (a, a + h).
double ap_mu_closed_form(double p, double h);

SuiteResult suite_prop41(const SquareMatrix& A = SquareMatrix::scalar(2.0));
SuiteResult suite_prop42(double p = 2.0);
SuiteResult suite_prop43();

struct TheoremConfig {
  std::size_t n1d = std::size_t{1} << 14;
  std::size_t n2d = 512;
  int probe_functions = 50;
};
SuiteResult suite_theorems(const TheoremConfig& cfg = {});

/// Runs the named suites ("prop41", "prop42", "prop43", "theorems" or "all")
/// concurrently; results keep the requested order.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const TheoremConfig& cfg = {});

}  // namespace weightlab
