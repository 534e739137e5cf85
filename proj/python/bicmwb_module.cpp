#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "bicmwb/capacity.hpp"
#include "bicmwb/expansion.hpp"
#include "bicmwb/json_io.hpp"
#include "bicmwb/sweep.hpp"
#include "bicmwb/tradeoff.hpp"

namespace py = pybind11;
using namespace bicmwb;

namespace {

Labeling labeling_from(const std::string& name) {
    if (name == "gray") return Labeling::gray;
    if (name == "sp" || name == "set_partitioning") return Labeling::set_partitioning;
    if (name == "anti-gray" || name == "anti_gray") return Labeling::anti_gray;
    throw std::invalid_argument("unknown labeling \"" + name + "\"");
}

std::vector<std::uint32_t> labels_from_strings(const std::vector<std::string>& strings) {
    std::vector<std::uint32_t> labels;
    labels.reserve(strings.size());
    for (const std::string& s : strings) {
        std::uint32_t v = 0;
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("labels must be bit strings");
            v = (v << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        labels.push_back(v);
    }
    return labels;
}

} // namespace

PYBIND11_MODULE(bicmwb, m) {
    m.doc() = "Coded-modulation and per-label-bit capacities, low-SNR expansions, and "
              "power-bandwidth trade-offs for labeled signal constellations";

    py::register_exception<TradeoffDiverged>(m, "TradeoffDiverged");
    py::register_exception<TradeoffNoSolution>(m, "TradeoffNoSolution");

    py::class_<Moments>(m, "Moments")
        .def_readonly("mu1", &Moments::mu1)
        .def_readonly("mu2", &Moments::mu2)
        .def_readonly("mu2_pseudo", &Moments::mu2_pseudo)
        .def("__repr__", [](const Moments& mm) {
            return "Moments(mu1=(" + std::to_string(mm.mu1.real()) + "," +
                   std::to_string(mm.mu1.imag()) + "), mu2=" + std::to_string(mm.mu2) + ")";
        });

    py::class_<Covariance2x2>(m, "Covariance2x2")
        .def_readonly("var_re", &Covariance2x2::var_re)
        .def_readonly("var_im", &Covariance2x2::var_im)
        .def_readonly("cov_re_im", &Covariance2x2::cov_re_im)
        .def("trace", &Covariance2x2::trace);

    py::class_<Constellation>(m, "Constellation")
        .def(py::init([](const std::vector<cplx>& points,
                         const std::optional<std::vector<double>>& probs) {
                 if (probs) return Constellation(points, *probs);
                 return Constellation::uniform(points);
             }),
             py::arg("points"), py::arg("probs") = py::none())
        .def("__len__", &Constellation::size)
        .def_property_readonly("points", &Constellation::points)
        .def_property_readonly("probs", &Constellation::probs)
        .def("moments", &Constellation::moments)
        .def("covariance", &Constellation::covariance)
        .def("scaled", &Constellation::scaled, py::arg("factor"));

    py::class_<LabeledConstellation>(m, "LabeledConstellation")
        .def(py::init([](const std::vector<cplx>& points, const std::vector<std::string>& labels) {
                 return LabeledConstellation(points, labels_from_strings(labels));
             }),
             py::arg("points"), py::arg("labels"))
        .def("__len__", &LabeledConstellation::size)
        .def_property_readonly("m", &LabeledConstellation::bits)
        .def_property_readonly("base", &LabeledConstellation::base)
        .def_property_readonly("labels",
                               [](const LabeledConstellation& lc) {
                                   std::vector<std::string> out;
                                   for (std::size_t k = 0; k < lc.size(); ++k)
                                       out.push_back(lc.label_string(k));
                                   return out;
                               })
        .def("subconstellation", &LabeledConstellation::subconstellation, py::arg("bit_index"),
             py::arg("bit_value"))
        .def("with_bit_permutation", &LabeledConstellation::with_bit_permutation, py::arg("perm"));

    m.def("make_pam", &make_pam, py::arg("M"));
    m.def(
        "make_psk",
        [](unsigned M, const std::string& labeling) { return make_psk(M, labeling_from(labeling)); },
        py::arg("M"), py::arg("labeling") = "gray");
    m.def(
        "make_qam",
        [](unsigned M, const std::string& labeling) { return make_qam(M, labeling_from(labeling)); },
        py::arg("M"), py::arg("labeling") = "gray");
    m.def("make_builtin", &make_builtin, py::arg("name"), py::arg("labeling") = "gray");
    m.def("mixture", &mixture, py::arg("parts"));

    py::class_<ChannelModel>(m, "ChannelModel")
        .def_static("awgn", &ChannelModel::awgn)
        .def_static("nakagami", &ChannelModel::nakagami, py::arg("nu"))
        .def_property_readonly("is_awgn", &ChannelModel::is_awgn)
        .def_property_readonly("nu", &ChannelModel::nu);

    py::class_<Quadrature>(m, "Quadrature")
        .def(py::init<int, int>(), py::arg("order") = 32, py::arg("fading_order") = 64)
        .def_readonly("order", &Quadrature::order)
        .def_readonly("fading_order", &Quadrature::fading_order);

    py::class_<MonteCarlo>(m, "MonteCarlo")
        .def(py::init<long, std::uint64_t>(), py::arg("samples"), py::arg("seed"))
        .def_readonly("samples", &MonteCarlo::samples)
        .def_readonly("seed", &MonteCarlo::seed);

    py::class_<CapacityValue>(m, "CapacityValue")
        .def_readonly("nats", &CapacityValue::nats)
        .def_readonly("std_error", &CapacityValue::std_error)
        .def_readonly("raw_nats", &CapacityValue::raw_nats)
        .def_property_readonly("bits", &CapacityValue::bits)
        .def_property_readonly("std_error_bits", &CapacityValue::std_error_bits)
        .def("__repr__", [](const CapacityValue& v) {
            return "CapacityValue(nats=" + std::to_string(v.nats) + ")";
        });

    m.def("cm_capacity", &cm_capacity, py::arg("constellation"), py::arg("snr"),
          py::arg("channel") = ChannelModel::awgn(), py::arg("method") = EvalMethod(Quadrature{}));
    m.def("bicm_capacity", &bicm_capacity, py::arg("constellation"), py::arg("snr"),
          py::arg("channel") = ChannelModel::awgn(), py::arg("method") = EvalMethod(Quadrature{}));
    m.def("bicm_capacity_direct", &bicm_capacity_direct, py::arg("constellation"), py::arg("snr"),
          py::arg("channel") = ChannelModel::awgn(), py::arg("method") = EvalMethod(Quadrature{}));
    m.def("gaussian_reference", &gaussian_reference, py::arg("snr"));

    py::class_<ExpansionCoeffs>(m, "ExpansionCoeffs")
        .def(py::init([](double c1, double c2, std::optional<ChannelModel> channel) {
                 return ExpansionCoeffs{c1, c2, channel.value_or(ChannelModel::awgn())};
             }),
             py::arg("c1"), py::arg("c2"), py::arg("channel") = py::none())
        .def_readonly("c1", &ExpansionCoeffs::c1)
        .def_readonly("c2", &ExpansionCoeffs::c2)
        .def_readonly("channel", &ExpansionCoeffs::channel)
        .def("__repr__", [](const ExpansionCoeffs& e) {
            return "ExpansionCoeffs(c1=" + std::to_string(e.c1) +
                   ", c2=" + std::to_string(e.c2) + ")";
        });

    py::class_<WidebandFigures>(m, "WidebandFigures")
        .def_readonly("ebno_lim_linear", &WidebandFigures::ebno_lim_linear)
        .def_readonly("ebno_lim_db", &WidebandFigures::ebno_lim_db)
        .def_readonly("slope_zeta0", &WidebandFigures::slope_zeta0);

    m.def("cm_coeffs", &cm_coeffs, py::arg("constellation"));
    m.def("bicm_coeffs", &bicm_coeffs, py::arg("constellation"));
    m.def(
        "gray_c1",
        [](unsigned M, const std::string& family) {
            const GrayC1 g = gray_c1(
                M, family == "pam" ? GrayFamily::pam : GrayFamily::qam_of_m_squared);
            return py::make_tuple(g.c1, g.ebno_lim_linear);
        },
        py::arg("M"), py::arg("family") = "pam");
    m.def("apply_fading", &apply_fading, py::arg("coeffs"), py::arg("nu"));
    m.def("wideband_figures", &wideband_figures, py::arg("coeffs"));
    m.def("capacity_series", &capacity_series, py::arg("coeffs"), py::arg("snr"));
    m.def("linear_ebno_approx", &linear_ebno_approx, py::arg("coeffs"), py::arg("ebno_linear"));
    m.def(
        "fit_coeffs_numeric",
        [](const std::function<double(double)>& fn, const std::vector<double>& grid) {
            return fit_coeffs_numeric(fn, grid);
        },
        py::arg("capacity_nats"), py::arg("snr_grid"));
    m.def("default_fit_grid", &default_fit_grid);

    py::class_<TradeoffQuery>(m, "TradeoffQuery")
        .def(py::init([](const ExpansionCoeffs& c1, const ExpansionCoeffs& c2, double snr1) {
                 return TradeoffQuery{c1, c2, snr1};
             }),
             py::arg("coeffs1"), py::arg("coeffs2"), py::arg("snr1"))
        .def_readonly("coeffs1", &TradeoffQuery::coeffs1)
        .def_readonly("coeffs2", &TradeoffQuery::coeffs2)
        .def_readonly("snr1", &TradeoffQuery::snr1);

    py::class_<TradeoffPoint>(m, "TradeoffPoint")
        .def_readonly("delta_p", &TradeoffPoint::delta_p)
        .def_readonly("delta_w", &TradeoffPoint::delta_w);

    m.def("delta_w_approx", &delta_w_approx, py::arg("query"), py::arg("delta_p"));
    m.def("delta_p_approx", &delta_p_approx, py::arg("query"), py::arg("delta_w"));
    m.def("delta_p_exact_quadratic", &delta_p_exact_quadratic, py::arg("query"),
          py::arg("delta_w"));
    m.def("exact_tradeoff", &exact_tradeoff, py::arg("cap1"), py::arg("cap2"), py::arg("snr1"),
          py::arg("delta_p"));
    m.def(
        "nakagami_penalty",
        [](const ExpansionCoeffs& coeffs, double nu, double snr, const std::string& mode) {
            if (mode != "fix_power" && mode != "fix_bandwidth")
                throw std::invalid_argument("mode must be fix_power or fix_bandwidth");
            return nakagami_penalty(coeffs, nu, snr,
                                    mode == "fix_power" ? PenaltyMode::fix_power
                                                        : PenaltyMode::fix_bandwidth);
        },
        py::arg("coeffs"), py::arg("nu"), py::arg("snr"), py::arg("mode"));

    m.def(
        "parse_constellation_json",
        [](const std::string& text) -> py::object {
            const LoadedConstellation loaded = parse_constellation_json(text);
            if (loaded.labeled) return py::cast(*loaded.labeled);
            return py::cast(loaded.base);
        },
        py::arg("text"));
    m.def(
        "load_constellation_json",
        [](const std::string& path) -> py::object {
            const LoadedConstellation loaded = load_constellation_json(path);
            if (loaded.labeled) return py::cast(*loaded.labeled);
            return py::cast(loaded.base);
        },
        py::arg("path"));

    m.def(
        "sweep_csv",
        [](const LabeledConstellation& lc, const std::string& axis, double start_db,
           double stop_db, double step_db, const ChannelModel& channel, const EvalMethod& method,
           int threads) {
            if (axis != "snr_db" && axis != "ebno_db")
                throw std::invalid_argument("axis must be snr_db or ebno_db");
            SweepSpec spec{lc,      axis == "ebno_db" ? SweepAxis::ebno_db : SweepAxis::snr_db,
                           start_db, stop_db,
                           step_db,  channel,
                           method};
            return sweep_csv(spec, threads);
        },
        py::arg("constellation"), py::arg("axis") = "snr_db", py::arg("start_db") = -30.0,
        py::arg("stop_db") = 10.0, py::arg("step_db") = 1.0,
        py::arg("channel") = ChannelModel::awgn(), py::arg("method") = EvalMethod(Quadrature{}),
        py::arg("threads") = 1);

    m.def("db_from_linear", &db_from_linear, py::arg("x"));
    m.def("linear_from_db", &linear_from_db, py::arg("db"));
}
