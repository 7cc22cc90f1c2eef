// weightlab command-line interface.
#include <bit>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weightlab/czlab.hpp"
#include "weightlab/errors.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/io.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/suites.hpp"
#include "weightlab/weightclass.hpp"

using namespace weightlab;

namespace {

constexpr int kBadArguments = 2;

struct MaximalOpts {
  std::string input, family, op = "hl", young, matrix, measure_grid, out, csv;
  double alpha = 0.0;
};

struct ConstantOpts {
  std::string cls = "ap", weight, matrix, family, measure = "lebesgue", young, out;
  double p = 2.0, q = 0.0, s = 2.0, alpha = 0.0;
  std::size_t grid_n = 4096;
  bool trace = false;
};

struct CzOpts {
  std::string input, out;
  double a = 0.0, alpha = 0.0;
  std::optional<int> kmin, kmax;
};

struct VerifyOpts {
  std::vector<std::string> suites;
  std::string out;
  std::size_t n1d = std::size_t{1} << 14;
  std::size_t n2d = 512;
};

struct ProbeOpts {
  std::string weight, matrix, family, out;
  double p = 2.0;
  std::vector<double> s{1.5, 2.0, 3.0, 4.0};
};

void emit(const std::string& out, const std::string& json) {
  if (out.empty()) {
    std::cout << json;
  } else {
    write_text(out, json);
  }
}

CubeFamily default_family(const SegmentWeight1D& w) {
  const auto segs = w.segments();
  double lo = segs.front().lo(), hi = segs.back().hi();
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = -1.0;
    hi = 1.0;
  }
  return CubeFamily(Cube{1, {lo, 0.0}, hi - lo}, 0, 6, 2);
}

int run_maximal(const MaximalOpts& o) {
  const GridFunction f = parse_grid(read_text(o.input));
  const CubeFamily F = o.family.empty()
                           ? CubeFamily(f.geometry().bounding_cube(), 0, std::countr_zero(std::bit_floor(f.n())), 2)
                           : parse_family(read_text(o.family));
  GridFunction m;
  if (o.op == "hl") {
    if (!o.measure_grid.empty()) {
      m = hl_maximal(f, F, parse_grid(read_text(o.measure_grid)));
    } else {
      m = hl_maximal(f, F);
    }
  } else if (o.op == "dyadic") {
    m = dyadic_maximal(f);
  } else if (o.op == "frac" || o.op == "fractional") {
    m = fractional_maximal(f, o.alpha, F);
  } else if (o.op == "orlicz") {
    if (o.young.empty()) throw ConfigurationError("--young is required for the orlicz operator");
    m = orlicz_maximal(f, parse_young(read_text(o.young)), o.alpha, F);
  } else {
    throw ConfigurationError("unknown operator '" + o.op + "'");
  }
  std::string op = o.op;
  if (!o.matrix.empty()) {
    const SquareMatrix A = parse_matrix(read_text(o.matrix));
    m = matrix_compose(m, A, image_geometry(f.geometry(), A));
    op += " composed with " + A.describe() + "^{-1}";
  }
  emit(o.out, maximal_report_json(m, op, F.describe()));
  if (!o.csv.empty()) write_text(o.csv, field_csv(m));
  if (!o.out.empty()) std::cout << op << " maximum: " << m.max_value() << "\n";
  return 0;
}

int run_constant(const ConstantOpts& o) {
  const SegmentWeight1D w = parse_weight(read_text(o.weight));
  const SquareMatrix A = o.matrix.empty() ? SquareMatrix::identity(1) : parse_matrix(read_text(o.matrix));
  const CubeFamily F = o.family.empty() ? default_family(w) : parse_family(read_text(o.family));
  ClassSpec spec;
  spec.kind = parse_class(o.cls);
  spec.p = o.p;
  spec.s = o.s;
  spec.A = A;
  spec.measure = parse_measure(o.measure);
  spec.grid_n = o.grid_n;
  spec.q = o.q > 0.0 ? o.q : (o.alpha > 0.0 ? ClassSpec::fractional_q(o.p, o.alpha) : o.p);
  if (!o.young.empty()) spec.phi = parse_young(read_text(o.young));
  const ConstantReport r = constant(w, spec, F, o.trace);
  emit(o.out, constant_report_json(r, spec));
  if (!o.out.empty()) std::cout << spec.describe() << " = " << r.value << "\n";
  return 0;
}

int run_cz(const CzOpts& o) {
  const GridFunction f = parse_grid(read_text(o.input));
  const double a = o.a > 0.0 ? o.a : std::pow(2.0, f.dim() + 2);
  std::optional<std::pair<int, int>> range;
  if (o.kmin || o.kmax) {
    if (!o.kmin || !o.kmax) throw ConfigurationError("--kmin and --kmax go together");
    range = std::make_pair(*o.kmin, *o.kmax);
  }
  const CZDecomposition dec = cz_decompose(f, a, range, o.alpha);
  emit(o.out, decomposition_json(dec));
  if (!o.out.empty()) {
    std::size_t cubes = 0;
    for (const auto& lv : dec.levels) cubes += lv.cubes.size();
    std::cout << dec.levels.size() << " levels, " << cubes << " stopping cubes\n";
  }
  return 0;
}

int run_verify(const VerifyOpts& o) {
  TheoremConfig cfg;
  cfg.n1d = o.n1d;
  cfg.n2d = o.n2d;
  const auto results = run_suites(o.suites, cfg);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << r.render();
    if (const Check* c = r.first_failure()) {
      std::cerr << "suite " << r.id << " failed: " << c->name << "\n";
      ok = false;
    }
  }
  if (!o.out.empty()) write_text(o.out, suites_json(results));
  return ok ? 0 : 1;
}

int run_probe(const ProbeOpts& o) {
  const SegmentWeight1D w = parse_weight(read_text(o.weight));
  const SquareMatrix A = o.matrix.empty() ? SquareMatrix::identity(1) : parse_matrix(read_text(o.matrix));
  const CubeFamily F = o.family.empty() ? default_family(w) : parse_family(read_text(o.family));
  const RhProbe probe = rh_probe(w, A, o.p, o.s, F);
  emit(o.out, rh_probe_json(probe, ClassSpec::AAp(o.p, A)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weightlab: maximal operators, weight classes and decompositions"};
  app.require_subcommand(1);

  MaximalOpts mo;
  auto* maximal = app.add_subcommand("maximal", "maximal function of a grid function");
  maximal->add_option("--input", mo.input, "grid JSON")->required()->check(CLI::ExistingFile);
  maximal->add_option("--family", mo.family, "cube family JSON")->check(CLI::ExistingFile);
  maximal->add_option("--op", mo.op, "hl | dyadic | frac | orlicz");
  maximal->add_option("--alpha", mo.alpha, "fractional order");
  maximal->add_option("--young", mo.young, "Young function JSON (orlicz)")->check(CLI::ExistingFile);
  maximal->add_option("--matrix", mo.matrix, "compose with A^{-1}")->check(CLI::ExistingFile);
  maximal->add_option("--measure-grid", mo.measure_grid, "cell masses of the measure")->check(CLI::ExistingFile);
  maximal->add_option("--out", mo.out, "report path");
  maximal->add_option("--csv", mo.csv, "field dump path");

  ConstantOpts co;
  auto* cons = app.add_subcommand("constant", "weight-class constant over a cube family");
  cons->add_option("--class", co.cls, "ap | aap | aa1 | bump | frac | frac_bump | rh | ap_mu");
  cons->add_option("--weight", co.weight, "weight JSON")->required()->check(CLI::ExistingFile);
  cons->add_option("--matrix", co.matrix, "matrix JSON")->check(CLI::ExistingFile);
  cons->add_option("--family", co.family, "cube family JSON")->check(CLI::ExistingFile);
  cons->add_option("--measure", co.measure, "lebesgue | exp");
  cons->add_option("--young", co.young, "Young function JSON")->check(CLI::ExistingFile);
  cons->add_option("--p", co.p, "exponent p");
  cons->add_option("--q", co.q, "exponent q (fractional)");
  cons->add_option("--alpha", co.alpha, "fractional order, sets q from 1/q = 1/p - alpha");
  cons->add_option("--s", co.s, "reverse Hölder exponent");
  cons->add_option("--grid-n", co.grid_n, "cells for aa1");
  cons->add_flag("--trace", co.trace, "include per-cube products");
  cons->add_option("--out", co.out, "report path");

  CzOpts zo;
  auto* cz = app.add_subcommand("cz", "Calderón-Zygmund stopping cubes");
  cz->add_option("--input", zo.input, "grid JSON")->required()->check(CLI::ExistingFile);
  cz->add_option("--a", zo.a, "level parameter (default 2^{n+2})");
  cz->add_option("--alpha", zo.alpha, "fractional order");
  cz->add_option("--kmin", zo.kmin, "first level");
  cz->add_option("--kmax", zo.kmax, "last level");
  cz->add_option("--out", zo.out, "report path");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run reproduction suites");
  verify->add_option("suites", vo.suites, "prop41 | prop42 | prop43 | theorems | all")
      ->required()
      ->check(CLI::IsMember({"prop41", "prop42", "prop43", "theorems", "all"}));
  verify->add_option("--out", vo.out, "report path");
  verify->add_option("--n1d", vo.n1d, "1D grid cells for the theorem suite");
  verify->add_option("--n2d", vo.n2d, "2D cells per side for the theorem suite");

  ProbeOpts po;
  auto* probe = app.add_subcommand("probe-rh", "reverse Hölder constants of a weight and its dual");
  probe->add_option("--weight", po.weight, "weight JSON")->required()->check(CLI::ExistingFile);
  probe->add_option("--matrix", po.matrix, "matrix JSON")->check(CLI::ExistingFile);
  probe->add_option("--family", po.family, "cube family JSON")->check(CLI::ExistingFile);
  probe->add_option("--p", po.p, "exponent p");
  probe->add_option("--s", po.s, "reverse Hölder exponents");
  probe->add_option("--out", po.out, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArguments;
  }

  try {
    if (*maximal) return run_maximal(mo);
    if (*cons) return run_constant(co);
    if (*cz) return run_cz(zo);
    if (*verify) return run_verify(vo);
    if (*probe) return run_probe(po);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kBadArguments;
}
