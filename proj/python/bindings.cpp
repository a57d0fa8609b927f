#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "valfield/cli_core.hpp"
#include "valfield/decomp.hpp"
#include "valfield/parse.hpp"
#include "valfield/ultra.hpp"

namespace py = pybind11;
using namespace valfield;

namespace {

PolygroupSpec spec_from(std::int64_t p, const std::string& text, int level) {
  if (text.empty()) return PolygroupSpec::wp_twist(p, level);
  return parse_polygroup(text, p, level);
}

py::dict decomposition_dict(const ASDecomposition& d) {
  py::dict out;
  out["y"] = d.y;
  if (d.henselian) out["j"] = d.j;
  py::list parts;
  for (const auto& part : d.parts) parts.append(part);
  out["parts"] = parts;
  out["iterations"] = d.iterations;
  out["level"] = d.level;
  out["reexpansion"] = d.reexpand();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact kernel for valued fields of characteristic p";

  py::register_exception<Error>(m, "KernelError");

  py::class_<LaurentSeries>(m, "LaurentSeries")
      .def(py::init(
          [](const std::string& text) { return parse_series(text); }))
      .def("__str__", &print_series)
      .def("__repr__", &print_series)
      .def("__add__",
           [](const LaurentSeries& a, const LaurentSeries& b) { return a + b; })
      .def("__sub__",
           [](const LaurentSeries& a, const LaurentSeries& b) { return a - b; })
      .def("__mul__",
           [](const LaurentSeries& a, const LaurentSeries& b) { return a * b; })
      .def("__truediv__",
           [](const LaurentSeries& a, const LaurentSeries& b) {
             return a.div(b);
           })
      .def("__neg__", [](const LaurentSeries& a) { return -a; })
      .def("__eq__",
           [](const LaurentSeries& a, const LaurentSeries& b) { return a == b; })
      .def("val", [](const LaurentSeries& a) { return a.val().str(); })
      .def("residue",
           [](const LaurentSeries& a) { return a.residue().value(); })
      .def("prime", &LaurentSeries::prime)
      .def("frobenius", &LaurentSeries::frobenius, py::arg("n") = 1)
      .def("pth_root", &LaurentSeries::pth_root)
      .def("truncated", &LaurentSeries::truncated)
      .def("is_zero_to_prec", &LaurentSeries::is_zero_to_prec);

  py::class_<HahnSeries>(m, "HahnSeries")
      .def(py::init([](const std::string& text) { return parse_hahn(text); }))
      .def("__str__", &print_hahn)
      .def("__repr__", &print_hahn)
      .def("__add__",
           [](const HahnSeries& a, const HahnSeries& b) { return a + b; })
      .def("__sub__",
           [](const HahnSeries& a, const HahnSeries& b) { return a - b; })
      .def("__mul__",
           [](const HahnSeries& a, const HahnSeries& b) { return a * b; })
      .def("__neg__", [](const HahnSeries& a) { return -a; })
      .def("__eq__",
           [](const HahnSeries& a, const HahnSeries& b) { return a == b; })
      .def("sval", [](const HahnSeries& a) { return a.sval().str(); })
      .def("composite_val",
           [](const HahnSeries& a) { return a.composite_val().str(); })
      .def("frobenius", &HahnSeries::frobenius, py::arg("n") = 1)
      .def("pth_root", &HahnSeries::pth_root, py::arg("n") = 1);

  m.def("parse_series", &parse_series);
  m.def("parse_hahn", &parse_hahn, py::arg("text"),
        py::arg("denom_cap") = HahnSeries::kDefaultDenomCap);

  m.def("frobenius_parts", &frobenius_parts);
  m.def(
      "wp_solve",
      [](const LaurentSeries& x, int level, std::int64_t prec) {
        return wp_solve(x, level, prec);
      },
      py::arg("m"), py::arg("level") = 1, py::arg("prec") = 64);
  m.def(
      "as_decompose",
      [](const LaurentSeries& x, int level, bool henselian, std::int64_t prec) {
        return decomposition_dict(henselian
                                      ? as_decompose_henselian(x, level, prec)
                                      : as_decompose(x, level));
      },
      py::arg("x"), py::arg("level") = 1, py::arg("henselian") = false,
      py::arg("prec") = 64);

  m.def("pd_check", &pd_check);
  m.def(
      "pd_holds_on_samples",
      [](std::int64_t p, const std::string& spec_text, int level, int samples,
         std::uint64_t seed, std::int64_t prec) {
        PdSumVerdict v =
            pd_sum_check(spec_from(p, spec_text, level), samples, seed, prec);
        py::dict out;
        out["holds"] = v.kind == PdSumVerdict::Kind::HoldsOnSamples;
        out["samples_run"] = v.samples_run;
        out["degenerate"] = v.degenerate;
        py::list wit;
        for (const auto& x : v.failure_x) wit.append(x);
        out["failure_x"] = wit;
        return out;
      },
      py::arg("p"), py::arg("spec") = "", py::arg("level") = 1,
      py::arg("samples") = 100, py::arg("seed") = 1, py::arg("prec") = 32);

  m.def(
      "valuation_independent",
      [](const std::vector<LaurentSeries>& c, int level, int samples,
         std::uint64_t seed) {
        IndependenceVerdict v = valuation_independent(
            c, IndependenceMode::ExactCosets, level, samples, seed);
        py::dict out;
        out["independent"] = v.kind != IndependenceVerdict::Kind::Dependent;
        out["proven"] = v.kind == IndependenceVerdict::Kind::IndependentProven;
        py::list wit;
        for (const auto& d : v.witness) wit.append(d);
        out["witness"] = wit;
        out["note"] = v.note;
        return out;
      },
      py::arg("coeffs"), py::arg("level") = 1, py::arg("samples") = 200,
      py::arg("seed") = 1);

  m.def(
      "kernel",
      [](const std::string& poly_text, std::int64_t p, std::int64_t prec) {
        auto f = parse_poly(poly_text, p);
        auto add = f.as_additive();
        if (!add)
          fail(ErrorCode::BadArgument, "kernel needs an additive polynomial");
        return kernel(*add, prec);
      },
      py::arg("poly"), py::arg("p"), py::arg("prec") = 24);

  m.def(
      "optimal_approx",
      [](const LaurentSeries& z, std::int64_t p, const std::string& spec_text,
         std::int64_t budget) {
        ApproxResult r = optimal_approx(z, spec_from(p, spec_text, 1), budget);
        py::dict out;
        out["y"] = r.y;
        out["distance"] = r.distance.str();
        out["certificate"] = r.certificate;
        return out;
      },
      py::arg("z"), py::arg("p"), py::arg("spec") = "",
      py::arg("budget") = 32);

  m.def(
      "preimage",
      [](const std::string& poly_text, const LaurentSeries& center,
         const std::string& radius, std::int64_t prec) {
        auto f = parse_poly(poly_text, center.prime());
        Value r = radius == "inf" ? Value::infinity()
                                  : Value::finite([&] {
                                      size_t slash = radius.find('/');
                                      if (slash == std::string::npos)
                                        return Rational(std::stoll(radius));
                                      return Rational(
                                          std::stoll(radius.substr(0, slash)),
                                          std::stoll(radius.substr(slash + 1)));
                                    }());
        PreimageResult pre =
            poly_preimage_ball(f, Ball<LaurentSeries>{center, r}, prec);
        py::list out;
        for (const auto& gb : pre.balls)
          out.append(py::make_tuple(gb.outer().center,
                                    gb.outer().radius.str()));
        return out;
      },
      py::arg("poly"), py::arg("center"), py::arg("radius") = "1",
      py::arg("prec") = 24);

  m.def("prime_sequence", &prime_sequence, py::arg("p"), py::arg("n") = 1,
        py::arg("progressions") = 1, py::arg("terms") = 3);

  m.def(
      "telescope",
      [](const std::string& manifest, int k, int depth) {
        XiTower tower = build_xi_tower(manifest_from_string(manifest));
        return telescope_check(tower, k,
                               depth > 0 ? std::optional<int>(depth)
                                         : std::nullopt)
            .str();
      },
      py::arg("manifest"), py::arg("k"), py::arg("depth") = 0);

  m.def(
      "build_tower",
      [](const std::string& manifest) {
        XiTower tower = build_xi_tower(manifest_from_string(manifest));
        py::dict out;
        py::list xi;
        for (int j = 1; j <= tower.params.J; ++j) xi.append(tower.xi_at(j));
        out["xi"] = xi;
        out["support_sizes"] = tower.support_sizes();
        bool rec = true;
        for (int j = 1; j < tower.params.J; ++j)
          rec = rec && tower_recursion_holds(tower, j);
        out["recursion_exact"] = rec;
        return out;
      },
      py::arg("manifest"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        CliResult r = run_cli(args);
        return py::make_tuple(r.exit_code, r.out);
      },
      py::arg("args"));
}
