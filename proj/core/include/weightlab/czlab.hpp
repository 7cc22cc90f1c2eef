#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/grid.hpp"
#include "weightlab/matrix.hpp"
#include "weightlab/segment_weight.hpp"
#include "weightlab/young.hpp"

namespace weightlab {

struct StoppingCube {
  IndexCube cube;
  double average;  ///< |Q|^{alpha/n - 1} ∫_Q f (the plain average when alpha = 0)
};

struct CZLevel {
  int k = 0;
  double threshold = 0.0;  ///< a^k / 4^n
  std::vector<StoppingCube> cubes;
  /// Per cube: the level k+1 stopping cubes inside it (E = Q minus those).
  std::vector<std::vector<IndexCube>> removed;
  /// Per cube: |E| in cells.
  std::vector<std::size_t> e_cells;
};

struct CZDecomposition {
  GridGeometry geometry;
  double a = 0.0;
  double alpha = 0.0;
  std::vector<CZLevel> levels;  ///< consecutive k, ascending
};

/// Fractional average |Q|^{alpha/n - 1} ∫_Q f of a grid cube.
double fractional_average(const GridFunction& f, const IndexCube& q, double alpha);

/// Maximal dyadic cubes with fractional average > a^k/4^n for each k in the
/// range, by top-down recursion. The default range runs from the smallest k
/// whose root selection would satisfy the upper sandwich bound to the last k
/// with any stopping cube; f = 0 gives no levels.
CZDecomposition cz_decompose(const GridFunction& f, double a,
                             std::optional<std::pair<int, int>> k_range = std::nullopt,
                             double alpha = 0.0);

struct SandwichReport {
  std::size_t cubes = 0;
  std::size_t violations = 0;
  bool maximal = true;  ///< every dyadic parent has average <= a^k/4^n
};

/// a^k/4^n < avg <= a^k/2^n for every stopping cube, plus maximality.
SandwichReport verify_sandwich(const GridFunction& f, const CZDecomposition& dec);

/// Cells of E_{k,j} in ascending order.
std::vector<std::size_t> e_cells(const CZDecomposition& dec, std::size_t level, std::size_t j);

struct ExpansionReport {
  double beta = 0.0;  ///< max |Q|/|E|; +inf when some E is empty; 0 without cubes
  bool disjoint = true;
  std::optional<std::pair<int, IndexCube>> witness;  ///< (k, cube) with empty E
};

ExpansionReport ekj_expansion_check(const CZDecomposition& dec);

struct LevelSetEntry {
  int k = 0;
  std::size_t omega_cells = 0;
  std::size_t omega_a_cells = 0;
  std::size_t d_cells = 0;
  std::size_t d_a_cells = 0;
  double omega_measure = 0.0;
  double omega_a_measure = 0.0;
  double d_measure = 0.0;
  double d_a_measure = 0.0;
  bool set_identity = false;   ///< pull-back of Omega_k equals the forward image A(Omega_k)
  double measure_defect = 0.0; ///< ||Omega^A| - |det A||Omega|| in target cells
  bool nested = true;          ///< Omega_{k+1} ⊆ Omega_k and D_{k+1} ⊆ D_k
  bool d_union = true;         ///< D_k equals the union of its stopping cubes
  bool triple_cover = true;    ///< Omega_k ⊆ union of tripled stopping cubes
};

struct LevelSetReport {
  GridGeometry source;
  GridGeometry target;
  std::vector<LevelSetEntry> entries;
};

/// Level sets {Mf > a^k}, {M^d f > a^k/4^n} and their images under A on the
/// grid A(box) with the same resolution (or an explicit target grid).
LevelSetReport level_sets(const GridFunction& f, const SquareMatrix& A, double a,
                          std::pair<int, int> k_range, const CubeFamily& F, double alpha = 0.0,
                          std::optional<GridGeometry> target = std::nullopt);

struct ChainConfig {
  GridFunction f;  ///< nonnegative, on a 1D power-of-two grid
  SegmentWeight1D w;
  SquareMatrix A = SquareMatrix::identity(1);
  double p = 2.0;
  double alpha = 0.0;
  YoungFn phi = YoungFn::bump(2.0, 0.5);
  double a = 8.0;
  int family_shifts = 4;
};

struct ChainStep {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  ///< (rhs - lhs) / |rhs|
};

struct ChainReport {
  bool applicable = false;
  std::string reason;
  double q = 0.0;
  int k_lo = 0;
  int k_hi = 0;
  int levels = 0;           ///< k_hi - k_lo + 1 when positive
  double L0 = 0.0;          ///< ∫ (M_alpha f(A^{-1}y))^q w(y) dy on the image grid
  double remainder = 0.0;   ///< part of L0 from levels below k_lo
  double f_norm = 0.0;      ///< ||f||_{L^p(w)}
  double bump_constant = 0.0;
  double beta = 0.0;
  double c_bp = 0.0;
  double chain_constant = 0.0;  ///< c with L0 <= R + c^q [w]^q ||f||^q
  double ratio = 0.0;           ///< (L0)^{1/q} / ||f||
  bool cover = false;
  bool disjoint = false;
  std::vector<ChainStep> steps;
  double min_slack = 0.0;
  bool holds = false;  ///< cover, disjointness and every slack >= -1e-6
};

/// Evaluates each inequality of the good-lambda chain that bounds M_{alpha,A^{-1}}
/// from L^p(w) to L^q(w), 1/q = 1/p - alpha, on 1D grids.
ChainReport theorem_chain_check(const ChainConfig& cfg);

}  // namespace weightlab
