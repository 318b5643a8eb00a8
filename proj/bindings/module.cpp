#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diracgap/dirac.hpp"
#include "diracgap/errors.hpp"
#include "diracgap/gap.hpp"
#include "diracgap/hardy.hpp"
#include "diracgap/lambda_t.hpp"
#include "diracgap/magnetic.hpp"
#include "diracgap/soliton.hpp"

namespace py = pybind11;
using namespace diracgap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dirac gap eigenvalues in (-c^2, c^2) by the collapse-free min-max "
            "method, with soliton shooting, Hardy inequality checks and the "
            "lowest-Landau-level problem";

  py::register_exception<GapCollapse>(m, "GapCollapseError");
  py::register_exception<NoRootInGap>(m, "NoRootInGapError");
  py::register_exception<BracketNotFound>(m, "BracketNotFoundError");
  py::register_exception<HypothesisUnmet>(m, "HypothesisUnmetError");

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<double>(), py::arg("c") = 1.0)
      .def_readonly("c", &PhysicalParams::c)
      .def_property_readonly("gap_upper", &PhysicalParams::gap_upper)
      .def_property_readonly("gap_lower", &PhysicalParams::gap_lower);

  py::class_<AngularChannel>(m, "AngularChannel")
      .def(py::init<int>(), py::arg("kappa") = -1)
      .def_readonly("kappa", &AngularChannel::kappa)
      .def_property_readonly("l_upper", &AngularChannel::l_upper)
      .def_property_readonly("l_lower", &AngularChannel::l_lower);

  py::class_<Potential>(m, "Potential")
      .def_static("coulomb", &Potential::coulomb, py::arg("nu"))
      .def_static("regularized_coulomb", &Potential::regularized_coulomb, py::arg("nu"),
                  py::arg("delta"))
      .def_static("tabulated", &Potential::tabulated, py::arg("radii"), py::arg("values"))
      .def_static("from_file", &Potential::from_file, py::arg("path"))
      .def("__call__", &Potential::operator(), py::arg("r"))
      .def_property_readonly("nu", &Potential::nu)
      .def_property_readonly("K1", &Potential::K1)
      .def_property_readonly("K2", &Potential::K2)
      .def("__repr__", &Potential::describe);

  py::class_<SplineBasis>(m, "SplineBasis")
      .def_property_readonly("size", &SplineBasis::size)
      .def_property_readonly("degree", &SplineBasis::degree)
      .def_property_readonly("rmax", &SplineBasis::right)
      .def("refined", &SplineBasis::refined)
      .def("value", &SplineBasis::value, py::arg("i"), py::arg("r"))
      .def("deriv", &SplineBasis::deriv, py::arg("i"), py::arg("r"))
      .def("combination", &SplineBasis::combination, py::arg("coeffs"), py::arg("r"));
  m.def("graded_radial_basis", &graded_radial_basis, py::arg("n"), py::arg("rmax"),
        py::arg("degree") = 2, py::arg("h0_frac") = 1e-6);
  m.def("graded_line_basis", &graded_line_basis, py::arg("n"), py::arg("zmax"),
        py::arg("degree") = 2, py::arg("h0_frac") = 1e-4);

  m.def("free_dirac_symbol", &free_dirac_symbol, py::arg("p"), py::arg("params"));
  m.def("free_dirac_projector", &free_dirac_projector, py::arg("p"), py::arg("params"),
        py::arg("sign"));

  py::class_<GapLevelResult>(m, "GapLevelResult")
      .def_readonly("k", &GapLevelResult::k)
      .def_readonly("n", &GapLevelResult::n)
      .def_readonly("kappa", &GapLevelResult::kappa)
      .def_readonly("lam", &GapLevelResult::lambda)
      .def_readonly("mu_residual", &GapLevelResult::mu_residual)
      .def_readonly("degenerate", &GapLevelResult::degenerate)
      .def_readonly("history", &GapLevelResult::history)
      .def_readonly("coefficients", &GapLevelResult::coefficients);
  m.def(
      "solve_level",
      [](int k, const SplineBasis& basis, const Potential& V, const PhysicalParams& params,
         const AngularChannel& channel, double tol) {
        LevelOptions opts;
        opts.tol = tol;
        return solve_level(k, basis, V, params, channel, opts);
      },
      py::arg("k"), py::arg("basis"), py::arg("V"), py::arg("params"), py::arg("channel"),
      py::arg("tol") = 1e-9);

  py::class_<ConvergenceResult>(m, "ConvergenceResult")
      .def_readonly("sizes", &ConvergenceResult::sizes)
      .def_readonly("lambdas", &ConvergenceResult::lambdas)
      .def_readonly("error_estimate", &ConvergenceResult::error_estimate);
  m.def(
      "converge_levels",
      [](int k, const std::vector<SplineBasis>& bases, const Potential& V,
         const PhysicalParams& params, const AngularChannel& channel) {
        return converge_levels(k, bases, V, params, channel);
      },
      py::arg("k"), py::arg("bases"), py::arg("V"), py::arg("params"), py::arg("channel"));

  m.def("coulomb_dirac_level", &coulomb_dirac_level, py::arg("nu"), py::arg("c"),
        py::arg("kappa"), py::arg("k"));
  m.def("suggest_rmax", &suggest_rmax, py::arg("V"), py::arg("params"), py::arg("channel"),
        py::arg("k"));

  py::class_<LambdaTResult>(m, "LambdaTResult")
      .def_readonly("value", &LambdaTResult::value)
      .def_readonly("iterations", &LambdaTResult::iterations)
      .def_readonly("residual", &LambdaTResult::residual);
  m.def(
      "lambda_T",
      [](const std::function<double(double)>& f, const std::function<double(double)>& df,
         const Potential& V, const PhysicalParams& params, const AngularChannel& channel,
         double rmax) { return lambda_T({f, df}, V, params, channel, rmax); },
      py::arg("f"), py::arg("df"), py::arg("V"), py::arg("params"), py::arg("channel"),
      py::arg("rmax"));
  m.def(
      "lambda_T_coeffs",
      [](const SplineBasis& basis, const Eigen::VectorXd& coeffs, const Potential& V,
         const PhysicalParams& params, const AngularChannel& channel) {
        return lambda_T(basis, coeffs, V, params, channel);
      },
      py::arg("basis"), py::arg("coeffs"), py::arg("V"), py::arg("params"), py::arg("channel"));

  py::class_<MinLambdaTResult>(m, "MinLambdaTResult")
      .def_readonly("value", &MinLambdaTResult::value)
      .def_readonly("coefficients", &MinLambdaTResult::coefficients)
      .def_readonly("grad_norm", &MinLambdaTResult::grad_norm)
      .def_readonly("iterations", &MinLambdaTResult::iterations)
      .def_readonly("converged", &MinLambdaTResult::converged);
  m.def(
      "min_lambda_T",
      [](const Potential& V, const PhysicalParams& params, const AngularChannel& channel,
         const SplineBasis& basis) { return min_lambda_T(V, params, channel, basis); },
      py::arg("V"), py::arg("params"), py::arg("channel"), py::arg("basis"));

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("c", &SweepPoint::c)
      .def_readonly("lam", &SweepPoint::lambda)
      .def_readonly("mu", &SweepPoint::mu);
  py::class_<NonrelSweepResult>(m, "NonrelSweepResult")
      .def_readonly("points", &NonrelSweepResult::points)
      .def_readonly("mu_inf", &NonrelSweepResult::mu_inf)
      .def_readonly("slope", &NonrelSweepResult::slope);
  m.def(
      "nonrel_sweep",
      [](const std::vector<double>& cs, const Potential& V, const AngularChannel& channel,
         int k) { return nonrel_sweep(cs, V, channel, k); },
      py::arg("cs"), py::arg("V"), py::arg("channel"), py::arg("k") = 1);

  py::enum_<SolitonClass>(m, "SolitonClass")
      .value("Localized", SolitonClass::Localized)
      .value("UDominantBlowup", SolitonClass::UDominantBlowup)
      .value("VSignExit", SolitonClass::VSignExit)
      .value("Inconclusive", SolitonClass::Inconclusive);
  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def_static("soler", &Nonlinearity::soler)
      .def_static("power", &Nonlinearity::power, py::arg("theta"))
      .def_static("negative_power", &Nonlinearity::negative_power, py::arg("alpha"))
      .def_static("constant", &Nonlinearity::constant, py::arg("value"))
      .def_readonly("theta", &Nonlinearity::theta)
      .def_readonly("name", &Nonlinearity::name);
  py::class_<SolitonProfile>(m, "SolitonProfile")
      .def_readonly("omega", &SolitonProfile::omega)
      .def_readonly("x0", &SolitonProfile::x0)
      .def_readonly("r", &SolitonProfile::r)
      .def_readonly("u", &SolitonProfile::u)
      .def_readonly("v", &SolitonProfile::v)
      .def_readonly("nodes_u", &SolitonProfile::nodes_u)
      .def_readonly("nodes_v", &SolitonProfile::nodes_v)
      .def_readonly("decay_rate", &SolitonProfile::decay_rate)
      .def_readonly("classification", &SolitonProfile::classification)
      .def_readonly("residual_max_scaled", &SolitonProfile::residual_max_scaled);
  m.def(
      "integrate_soler",
      [](double omega, double x0, const Nonlinearity& g, double rmax) {
        return integrate_soler(omega, x0, g, rmax);
      },
      py::arg("omega"), py::arg("x0"), py::arg("g"), py::arg("rmax") = 0.0);
  m.def(
      "find_ground", [](double omega, const Nonlinearity& g) { return find_ground(omega, g); },
      py::arg("omega"), py::arg("g"));
  m.def(
      "find_excited",
      [](double omega, const Nonlinearity& g, int n) { return find_excited(omega, g, n); },
      py::arg("omega"), py::arg("g"), py::arg("n"));

  py::class_<CompactSupportResult>(m, "CompactSupportResult")
      .def_readonly("bounded", &CompactSupportResult::bounded)
      .def_readonly("integral", &CompactSupportResult::integral);
  m.def("compact_support_criterion", &compact_support_criterion, py::arg("g"));

  py::class_<SchwarzschildSetup>(m, "SchwarzschildSetup")
      .def(py::init([](double r0, double lambda, double omega) {
             return SchwarzschildSetup{r0, lambda, omega};
           }),
           py::arg("r0"), py::arg("lam"), py::arg("omega"))
      .def_readonly("r0", &SchwarzschildSetup::r0)
      .def_readonly("lam", &SchwarzschildSetup::lambda)
      .def_readonly("omega", &SchwarzschildSetup::omega)
      .def("metric", &SchwarzschildSetup::metric, py::arg("r"));
  m.def(
      "integrate_schwarzschild",
      [](const SchwarzschildSetup& setup, double x0, double rmax) {
        return integrate_schwarzschild(setup, x0, rmax);
      },
      py::arg("setup"), py::arg("x0"), py::arg("rmax") = 0.0);
  m.def(
      "find_schwarzschild_branch",
      [](const SchwarzschildSetup& setup) { return find_schwarzschild_branch(setup); },
      py::arg("setup"));

  py::class_<NlsProfile>(m, "NlsProfile")
      .def_readonly("r", &NlsProfile::r)
      .def_readonly("phi", &NlsProfile::phi)
      .def_readonly("phi0", &NlsProfile::phi0)
      .def_readonly("decay_rate", &NlsProfile::decay_rate);
  m.def(
      "nls_ground_state", [](const Nonlinearity& g) { return nls_ground_state(g); },
      py::arg("g"));

  py::class_<RescaleReport>(m, "RescaleReport")
      .def_readonly("eps", &RescaleReport::eps)
      .def_readonly("l2_distance", &RescaleReport::l2_distance)
      .def_readonly("chi_residual", &RescaleReport::chi_residual)
      .def_readonly("amplitude_ratio", &RescaleReport::amplitude_ratio);
  m.def(
      "nonrel_rescale_check",
      [](double eps, const Nonlinearity& g) { return nonrel_rescale_check(eps, g); },
      py::arg("eps"), py::arg("g"));

  py::class_<InequalityReport>(m, "InequalityReport")
      .def_readonly("id", &InequalityReport::id)
      .def_readonly("seed", &InequalityReport::seed)
      .def_readonly("lhs", &InequalityReport::lhs)
      .def_readonly("rhs", &InequalityReport::rhs)
      .def_readonly("margin", &InequalityReport::margin)
      .def_readonly("constant", &InequalityReport::constant)
      .def_readonly("hypothesis_ok", &InequalityReport::hypothesis_ok)
      .def_readonly("note", &InequalityReport::note);
  m.def("hardy_inequality_ids", &hardy_inequality_ids);
  m.def(
      "run_hardy_family",
      [](const std::string& id, int count, std::uint64_t seed, const PhysicalParams& params) {
        HardySuiteOptions opts;
        opts.count = count;
        opts.seed = seed;
        return run_hardy_family(id, opts, params);
      },
      py::arg("id"), py::arg("count") = 100, py::arg("seed") = 1,
      py::arg("params") = PhysicalParams(1.0));
  m.def("classical_hardy_extremal_ratio", &classical_hardy_extremal_ratio, py::arg("eps"));

  py::class_<MagneticParams>(m, "MagneticParams")
      .def(py::init<double, double>(), py::arg("nu"), py::arg("B"))
      .def_readonly("nu", &MagneticParams::nu)
      .def_readonly("B", &MagneticParams::B);
  m.def("a_B0", &a_B0, py::arg("z"), py::arg("B"));
  m.def(
      "lambda_B0",
      [](const std::function<double(double)>& f, const std::function<double(double)>& df,
         double zmax, const MagneticParams& params) {
        return lambda_B0(f, df, zmax, params).value;
      },
      py::arg("f"), py::arg("df"), py::arg("zmax"), py::arg("params"));
  py::class_<Landau1DResult>(m, "Landau1DResult")
      .def_readonly("c0", &Landau1DResult::c0)
      .def_readonly("coefficients", &Landau1DResult::coefficients)
      .def_readonly("grad_norm", &Landau1DResult::grad_norm)
      .def_readonly("converged", &Landau1DResult::converged)
      .def_readonly("tail_mass", &Landau1DResult::tail_mass);
  m.def(
      "minimize_c0",
      [](const MagneticParams& params, int n, int degree) {
        return minimize_c0(params, default_z_basis(params.B, n, degree));
      },
      py::arg("params"), py::arg("n") = 160, py::arg("degree") = 3);
  py::class_<CriticalFieldResult>(m, "CriticalFieldResult")
      .def_readonly("B_lower", &CriticalFieldResult::B_lower)
      .def_readonly("B_upper", &CriticalFieldResult::B_upper)
      .def_readonly("headline", &CriticalFieldResult::headline)
      .def("bracket_mid", &CriticalFieldResult::bracket_mid);
  m.def(
      "critical_field", [](double nu) { return critical_field(nu); }, py::arg("nu"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
