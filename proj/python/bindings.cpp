// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitrx/densities.hpp"
#include "splitrx/detect.hpp"
#include "splitrx/mi.hpp"
#include "splitrx/model.hpp"
#include "splitrx/parallel.hpp"
#include "splitrx/rng.hpp"
#include "splitrx/specfun.hpp"

namespace py = pybind11;
using namespace splitrx;

namespace {

DetectorKind detector_kind(const std::string& name, int quad_order) {
    DetectorKind det;
    det.quad.order_per_dim = quad_order;
    if (name == "ml") det.variant = DetectorVariant::MlQuadrature;
    else if (name == "fast") det.variant = DetectorVariant::LowComplexity;
    else if (name == "nn-cd") det.variant = DetectorVariant::NearestNeighborCd;
    else throw std::invalid_argument("detector must be ml|fast|nn-cd");
    return det;
}

}  // namespace

PYBIND11_MODULE(_splitrx, m) {
    m.doc() = "Splitting receiver (joint coherent + power detection) toolkit";

    m.def("set_num_threads", &set_num_threads, py::arg("n"),
          "Worker threads for Monte-Carlo loops (0 = hardware default)");

    // special functions
    m.def("erfc", &splitrx::erfc, py::arg("x"));
    m.def("exp_e1", &exp_e1, py::arg("x"), "exp(x) * E1(x) for x > 0");
    m.def("bessel_i0_scaled", &bessel_i0_scaled, py::arg("x"), "exp(-x) * I0(x)");

    // model types
    py::class_<NoiseEnv>(m, "NoiseEnv")
        .def(py::init<double, double, double>(), py::arg("sigma_a2"), py::arg("sigma_cov2"),
             py::arg("sigma_rec2"))
        .def_readwrite("sigma_a2", &NoiseEnv::sigma_a2)
        .def_readwrite("sigma_cov2", &NoiseEnv::sigma_cov2)
        .def_readwrite("sigma_rec2", &NoiseEnv::sigma_rec2);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<double, double, double, double>(), py::arg("power"), py::arg("h_mag") = 1.0,
             py::arg("rho") = 0.5, py::arg("eta") = 1.0)
        .def_readwrite("power", &SystemConfig::power)
        .def_readwrite("h_mag", &SystemConfig::h_mag)
        .def_readwrite("rho", &SystemConfig::rho)
        .def_readwrite("eta", &SystemConfig::eta);

    py::class_<RxSample>(m, "RxSample")
        .def(py::init<>())
        .def_readwrite("y1", &RxSample::y1)
        .def_readwrite("y2", &RxSample::y2);

    py::class_<Constellation>(m, "Constellation")
        .def_readonly("points", &Constellation::points)
        .def_readonly("label", &Constellation::label)
        .def("__len__", [](const Constellation& c) { return c.points.size(); });

    m.def("make_qam", &make_qam, py::arg("m"));
    m.def("make_psk", &make_psk, py::arg("m"));
    m.def("make_apsk", &make_apsk, py::arg("ring_counts"), py::arg("ring_radii"),
          py::arg("ring_phases"));
    m.def("preset_constellation", &preset_constellation, py::arg("name"));

    m.def(
        "draw_samples",
        [](const cplx& x, const SystemConfig& cfg, const NoiseEnv& env, std::uint64_t seed, int n) {
            Philox rng(seed, 0);
            std::vector<std::pair<cplx, double>> out;
            out.reserve(n);
            for (int i = 0; i < n; ++i) {
                const RxSample s = sample_channel(x, cfg, env, rng);
                out.emplace_back(s.y1, s.y2);
            }
            return out;
        },
        py::arg("x"), py::arg("cfg"), py::arg("env"), py::arg("seed"), py::arg("n"),
        "n channel observations of symbol x as (y1, y2) pairs");

    // densities
    m.def("emg_pdf", &emg_pdf, py::arg("y2"), py::arg("power"), py::arg("h_mag"),
          py::arg("sigma_a2"), py::arg("sigma_rec2"));
    m.def("ncx2_pdf", &ncx2_pdf, py::arg("r_n"), py::arg("lambda_"), py::arg("sigma_s2"));
    m.def("rc_pdf", &rc_pdf, py::arg("r_c"), py::arg("lambda_"), py::arg("sigma_s2"),
          py::arg("sigma_n2"));
    m.def(
        "cond_joint_pdf_given_x",
        [](const cplx& y1, double y2, const cplx& x, const SystemConfig& cfg, const NoiseEnv& env,
           int order) { return cond_joint_pdf_given_x(y1, y2, x, cfg, env, QuadratureSpec{order}); },
        py::arg("y1"), py::arg("y2"), py::arg("x"), py::arg("cfg"), py::arg("env"),
        py::arg("quad_order") = 48);
    m.def("lowcomplexity_likelihood", &lowcomplexity_likelihood, py::arg("y1"),
          py::arg("y2_scaled"), py::arg("x"), py::arg("cfg"), py::arg("env"));

    // mutual information
    py::enum_<MiMethod>(m, "MiMethod")
        .value("histogram", MiMethod::Histogram)
        .value("plugin", MiMethod::Plugin)
        .value("closed", MiMethod::ClosedForm)
        .value("approx", MiMethod::Approx);

    py::class_<EstimatorConfig>(m, "EstimatorConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &EstimatorConfig::n_samples)
        .def_readwrite("bins_per_dim", &EstimatorConfig::bins_per_dim)
        .def_readwrite("inner_samples", &EstimatorConfig::inner_samples)
        .def_readwrite("seed", &EstimatorConfig::seed)
        .def_property(
            "quad_order", [](const EstimatorConfig& e) { return e.quad.order_per_dim; },
            [](EstimatorConfig& e, int v) { e.quad.order_per_dim = v; });

    py::class_<MiEstimate>(m, "MiEstimate")
        .def_readonly("bits", &MiEstimate::bits)
        .def_readonly("std_err", &MiEstimate::std_err)
        .def_readonly("method", &MiEstimate::method)
        .def_readonly("warning", &MiEstimate::warning)
        .def("__repr__", [](const MiEstimate& e) {
            return "MiEstimate(bits=" + std::to_string(e.bits) +
                   ", std_err=" + std::to_string(e.std_err) + ")";
        });

    py::class_<GainReport>(m, "GainReport")
        .def_readonly("rho_star", &GainReport::rho_star)
        .def_readonly("g_mi", &GainReport::g_mi)
        .def_readonly("g_mi_pct", &GainReport::g_mi_pct)
        .def_readonly("mi_at_0", &GainReport::mi_at_0)
        .def_readonly("mi_at_1", &GainReport::mi_at_1)
        .def_readonly("mi_at_star", &GainReport::mi_at_star);

    m.def("mi_cd_closed_form", &mi_cd_closed_form, py::arg("cfg"), py::arg("env"));
    m.def("mi_pd_numeric", &mi_pd_numeric, py::arg("cfg"), py::arg("env"), py::arg("est"));
    m.def("mi_pd_upper_bound", &mi_pd_upper_bound, py::arg("cfg"), py::arg("env"));
    m.def("mi_split_approx", &mi_split_approx, py::arg("cfg"), py::arg("env"));
    m.def("mi_split_asymptotic", &mi_split_asymptotic, py::arg("cfg"), py::arg("env"));
    m.def("mi_split_mc", &mi_split_mc, py::arg("cfg"), py::arg("env"), py::arg("est"),
          py::arg("method"));
    m.def("asymptotic_gain", &asymptotic_gain, py::arg("env"));
    m.def("gain", &gain, py::arg("cfg"), py::arg("env"), py::arg("est"), py::arg("rho_grid_step"));
    m.def(
        "entropy_histogram",
        [](const std::vector<double>& data, int dim, int bins) {
            const auto h = entropy_histogram(data, dim, bins);
            return py::make_tuple(h.bits, h.std_err, h.warning);
        },
        py::arg("data"), py::arg("dim"), py::arg("bins_per_dim"),
        "Plug-in histogram differential entropy; returns (bits, std_err, warning)");

    // detection
    py::class_<SerResult>(m, "SerResult")
        .def_readonly("ser", &SerResult::ser)
        .def_readonly("n_symbols", &SerResult::n_symbols)
        .def_readonly("n_errors", &SerResult::n_errors)
        .def_readonly("ci95", &SerResult::ci95)
        .def_readonly("rho", &SerResult::rho)
        .def_readonly("power", &SerResult::power);

    py::class_<SerSweep>(m, "SerSweep")
        .def_readonly("rho_star", &SerSweep::rho_star)
        .def_readonly("ser_min", &SerSweep::ser_min)
        .def_readonly("curve", &SerSweep::curve);

    m.def(
        "detect_ml",
        [](const cplx& y1, double y2, const Constellation& c, const SystemConfig& cfg,
           const NoiseEnv& env, int order) {
            return detect_ml(RxSample{y1, y2}, c, cfg, env, QuadratureSpec{order});
        },
        py::arg("y1"), py::arg("y2"), py::arg("c"), py::arg("cfg"), py::arg("env"),
        py::arg("quad_order") = 48);
    m.def(
        "detect_fast",
        [](const cplx& y1, double y2_scaled, const Constellation& c, const SystemConfig& cfg,
           const NoiseEnv& env) { return detect_fast(RxSample{y1, y2_scaled}, c, cfg, env); },
        py::arg("y1"), py::arg("y2_scaled"), py::arg("c"), py::arg("cfg"), py::arg("env"));
    m.def(
        "ser_monte_carlo",
        [](const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env,
           const std::string& detector, std::int64_t n, std::uint64_t seed, int quad_order) {
            return ser_monte_carlo(c, cfg, env, detector_kind(detector, quad_order), n, seed);
        },
        py::arg("c"), py::arg("cfg"), py::arg("env"), py::arg("detector"), py::arg("n"),
        py::arg("seed"), py::arg("quad_order") = 48);
    m.def(
        "ser_optimal_rho",
        [](const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env,
           const std::string& detector, std::int64_t n, const std::vector<double>& grid,
           std::uint64_t seed, int quad_order) {
            return ser_optimal_rho(c, cfg, env, detector_kind(detector, quad_order), n, grid, seed);
        },
        py::arg("c"), py::arg("cfg"), py::arg("env"), py::arg("detector"), py::arg("n"),
        py::arg("rho_grid"), py::arg("seed"), py::arg("quad_order") = 48);
}
