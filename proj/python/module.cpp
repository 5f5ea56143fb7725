// Python bindings for the core operations.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ionread/calibrate.hpp"
#include "ionread/crosstalk.hpp"
#include "ionread/discriminate.hpp"
#include "ionread/mcsim.hpp"
#include "ionread/rates.hpp"
#include "ionread/stats.hpp"

namespace py = pybind11;
using namespace ionread;

PYBIND11_MODULE(_ionread, m) {
    m.doc() = "State-dependent-fluorescence readout toolkit for a 171Yb+ qubit";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    // ---- rates
    py::class_<AtomicConstants>(m, "AtomicConstants")
        .def(py::init<>())
        .def_readwrite("gamma", &AtomicConstants::gamma)
        .def_readwrite("delta_hfp", &AtomicConstants::delta_hfp)
        .def_readwrite("delta_hfs", &AtomicConstants::delta_hfs)
        .def_readwrite("i_sat", &AtomicConstants::i_sat)
        .def_readwrite("wavelength", &AtomicConstants::wavelength);

    py::class_<BeamParams>(m, "BeamParams")
        .def(py::init<>())
        .def_readwrite("intensity", &BeamParams::intensity)
        .def_readwrite("detuning", &BeamParams::detuning)
        .def_readwrite("saturation_param", &BeamParams::saturation_param)
        .def_static("from_intensity", &BeamParams::from_intensity, py::arg("intensity"),
                    py::arg("detuning"), py::arg("constants"));

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init<>())
        .def_readwrite("eps_sys", &ChannelParams::eps_sys)
        .def_readwrite("r_bg", &ChannelParams::r_bg)
        .def_readwrite("timing_resolution", &ChannelParams::timing_resolution);

    py::class_<RateSet>(m, "RateSet")
        .def(py::init<>())
        .def_readwrite("r_o", &RateSet::r_o)
        .def_readwrite("detected_bright", &RateSet::detected_bright)
        .def_readwrite("r_d", &RateSet::r_d)
        .def_readwrite("r_b", &RateSet::r_b)
        .def_readwrite("r_bg", &RateSet::r_bg)
        .def_static("measured", &RateSet::measured, py::arg("detected_bright"),
                    py::arg("r_d"), py::arg("r_b"), py::arg("r_bg"),
                    py::arg("eps_sys") = 0.0)
        .def_static("from_formulas", &RateSet::from_formulas, py::arg("beam"),
                    py::arg("channel"), py::arg("constants"));

    m.def("saturation_param", &saturation_param, py::arg("intensity"), py::arg("constants"));
    m.def("bright_scatter_rate", &bright_scatter_rate, py::arg("beam"), py::arg("constants"));
    m.def("dark_pump_rate", &dark_pump_rate, py::arg("beam"), py::arg("constants"));
    m.def("bright_pump_rate", &bright_pump_rate, py::arg("beam"), py::arg("constants"));
    m.def("two_level_rate", &two_level_rate, py::arg("intensity"), py::arg("eps_sys"),
          py::arg("constants"));
    m.def("intensity_from_power", &intensity_from_power, py::arg("power"), py::arg("waist"));

    // ---- stats
    py::class_<stats::MixtureSpec>(m, "MixtureSpec")
        .def(py::init<>())
        .def_readwrite("r1", &stats::MixtureSpec::r1)
        .def_readwrite("r2", &stats::MixtureSpec::r2)
        .def_readwrite("rt", &stats::MixtureSpec::rt)
        .def_readwrite("t", &stats::MixtureSpec::t);

    py::class_<stats::PrepErrors>(m, "PrepErrors")
        .def(py::init<>())
        .def(py::init([](double dark, double bright) {
                 return stats::PrepErrors{dark, bright};
             }),
             py::arg("p_prep_dark"), py::arg("p_prep_bright"))
        .def_readwrite("p_prep_dark", &stats::PrepErrors::p_prep_dark)
        .def_readwrite("p_prep_bright", &stats::PrepErrors::p_prep_bright);

    py::class_<stats::ErrorPoint>(m, "ErrorPoint")
        .def_readonly("window", &stats::ErrorPoint::window)
        .def_readonly("dark_error", &stats::ErrorPoint::dark_error)
        .def_readonly("bright_error", &stats::ErrorPoint::bright_error)
        .def_readonly("avg_error", &stats::ErrorPoint::avg_error)
        .def_readonly("avg_time", &stats::ErrorPoint::avg_time);

    py::class_<stats::WindowError>(m, "WindowError")
        .def_readonly("window", &stats::WindowError::window)
        .def_readonly("avg_error", &stats::WindowError::avg_error);

    m.def("poisson_pmf", &stats::poisson_pmf, py::arg("n"), py::arg("mean"));
    m.def(
        "mixture_pmf",
        [](std::int64_t n, const stats::MixtureSpec& spec) {
            return stats::mixture_pmf(n, spec);
        },
        py::arg("n"), py::arg("spec"));
    m.def("p_zero_dark", &stats::p_zero_dark, py::arg("t"), py::arg("rates"));
    m.def("p_zero_bright", &stats::p_zero_bright, py::arg("t"), py::arg("rates"));
    m.def("error_curve", &stats::error_curve, py::arg("rates"), py::arg("prep"),
          py::arg("windows"), py::arg("prior_bright") = 0.5);
    m.def("avg_stop_time", &stats::avg_stop_time, py::arg("rates"), py::arg("window"),
          py::arg("prior_bright") = 0.5);
    m.def("fidelity_at_avg_time", &stats::fidelity_at_avg_time, py::arg("rates"),
          py::arg("prep"), py::arg("target_avg_time"), py::arg("prior_bright") = 0.5,
          py::arg("window_hi") = 1.0);
    m.def("minimize_avg_error", &stats::minimize_avg_error, py::arg("rates"),
          py::arg("prep"), py::arg("window_lo"), py::arg("window_hi"),
          py::arg("prior_bright") = 0.5);

    // ---- policy + Monte Carlo
    py::enum_<PolicyKind>(m, "PolicyKind")
        .value("fixed_window_threshold", PolicyKind::fixed_window_threshold)
        .value("first_photon_stop", PolicyKind::first_photon_stop);

    py::class_<Policy>(m, "Policy")
        .def(py::init<>())
        .def_readwrite("kind", &Policy::kind)
        .def_readwrite("window", &Policy::window)
        .def_readwrite("threshold", &Policy::threshold);

    py::enum_<mcsim::IonState>(m, "IonState")
        .value("bright", mcsim::IonState::bright)
        .value("dark", mcsim::IonState::dark);

    py::class_<mcsim::TrialConfig>(m, "TrialConfig")
        .def(py::init<>())
        .def_readwrite("rates", &mcsim::TrialConfig::rates)
        .def_readwrite("initial_state", &mcsim::TrialConfig::initial_state)
        .def_readwrite("window", &mcsim::TrialConfig::window)
        .def_readwrite("timing_resolution", &mcsim::TrialConfig::timing_resolution)
        .def_readwrite("prep", &mcsim::TrialConfig::prep);

    py::class_<mcsim::PhotonTrace>(m, "PhotonTrace")
        .def_readonly("prepared_state", &mcsim::PhotonTrace::prepared_state)
        .def_readonly("timestamps", &mcsim::PhotonTrace::timestamps)
        .def_readonly("transition_time", &mcsim::PhotonTrace::transition_time)
        .def_readonly("trial_index", &mcsim::PhotonTrace::trial_index);

    py::class_<mcsim::McEstimate>(m, "McEstimate")
        .def_readonly("value", &mcsim::McEstimate::value)
        .def_readonly("std_error", &mcsim::McEstimate::std_error)
        .def_readonly("n_trials", &mcsim::McEstimate::n_trials);

    py::class_<mcsim::McResult>(m, "McResult")
        .def_readonly("dark_error", &mcsim::McResult::dark_error)
        .def_readonly("bright_error", &mcsim::McResult::bright_error)
        .def_readonly("avg_error", &mcsim::McResult::avg_error)
        .def_readonly("avg_time", &mcsim::McResult::avg_time);

    m.def("run_ensemble", &mcsim::run_ensemble, py::arg("config"), py::arg("n_trials"),
          py::arg("base_seed"), py::call_guard<py::gil_scoped_release>());
    m.def("estimate_error_and_time", &mcsim::estimate_error_and_time, py::arg("traces"),
          py::arg("policy"));

    py::class_<discriminate::Outcome>(m, "Outcome")
        .def_readonly("decision", &discriminate::Outcome::decision)
        .def_readonly("stop_time", &discriminate::Outcome::stop_time);
    m.def("classify", &discriminate::classify, py::arg("trace"), py::arg("trace_window"),
          py::arg("policy"));

    // ---- calibration
    py::class_<calibrate::CalibrationPoint>(m, "CalibrationPoint")
        .def(py::init<>())
        .def(py::init([](double intensity, double rate, double rate_error) {
                 return calibrate::CalibrationPoint{intensity, rate, rate_error};
             }),
             py::arg("intensity"), py::arg("rate"), py::arg("rate_error"))
        .def_readwrite("intensity", &calibrate::CalibrationPoint::intensity)
        .def_readwrite("rate", &calibrate::CalibrationPoint::rate)
        .def_readwrite("rate_error", &calibrate::CalibrationPoint::rate_error);

    py::class_<calibrate::SaturationFit>(m, "SaturationFit")
        .def_readonly("eps_sys", &calibrate::SaturationFit::eps_sys)
        .def_readonly("eps_sys_error", &calibrate::SaturationFit::eps_sys_error)
        .def_readonly("i_sat_used", &calibrate::SaturationFit::i_sat_used)
        .def_readonly("i_sat_error", &calibrate::SaturationFit::i_sat_error)
        .def_readonly("residual_norm", &calibrate::SaturationFit::residual_norm)
        .def_readonly("converged", &calibrate::SaturationFit::converged);

    py::class_<calibrate::ValueWithError>(m, "ValueWithError")
        .def(py::init<>())
        .def(py::init([](double value, double error) {
                 return calibrate::ValueWithError{value, error};
             }),
             py::arg("value"), py::arg("error"))
        .def_readwrite("value", &calibrate::ValueWithError::value)
        .def_readwrite("error", &calibrate::ValueWithError::error);

    py::class_<calibrate::EfficiencyBreakdown>(m, "EfficiencyBreakdown")
        .def_readonly("eps_pg", &calibrate::EfficiencyBreakdown::eps_pg)
        .def_readonly("eps_fc", &calibrate::EfficiencyBreakdown::eps_fc)
        .def_readonly("eps_fiber", &calibrate::EfficiencyBreakdown::eps_fiber)
        .def_readonly("eps_det", &calibrate::EfficiencyBreakdown::eps_det);

    m.def("fit_saturation", &calibrate::fit_saturation, py::arg("points"),
          py::arg("constants"), py::arg("fit_i_sat") = false);
    m.def("with_shot_noise_errors", &calibrate::with_shot_noise_errors, py::arg("points"),
          py::arg("n_experiments") = 300, py::arg("t_detect") = 0.5e-3);
    m.def("decompose", &calibrate::decompose, py::arg("eps_sys_free_pmt"),
          py::arg("eps_sys_fiber_pmt"), py::arg("eps_sys_snspd"), py::arg("eps_pg"),
          py::arg("eps_fiber"), py::arg("pmt_qe"));

    // ---- crosstalk
    py::class_<crosstalk::VisibilityPoint>(m, "VisibilityPoint")
        .def(py::init<>())
        .def(py::init([](double exposure, double visibility, double visibility_error) {
                 return crosstalk::VisibilityPoint{exposure, visibility, visibility_error};
             }),
             py::arg("exposure"), py::arg("visibility"), py::arg("visibility_error"))
        .def_readwrite("exposure", &crosstalk::VisibilityPoint::exposure)
        .def_readwrite("visibility", &crosstalk::VisibilityPoint::visibility)
        .def_readwrite("visibility_error", &crosstalk::VisibilityPoint::visibility_error);

    py::class_<crosstalk::CoherenceFit>(m, "CoherenceFit")
        .def_readonly("amplitude", &crosstalk::CoherenceFit::amplitude)
        .def_readonly("amplitude_error", &crosstalk::CoherenceFit::amplitude_error)
        .def_readonly("coherence_time", &crosstalk::CoherenceFit::coherence_time)
        .def_readonly("coherence_time_error", &crosstalk::CoherenceFit::coherence_time_error)
        .def_readonly("residual_norm", &crosstalk::CoherenceFit::residual_norm)
        .def_readonly("converged", &crosstalk::CoherenceFit::converged);

    py::class_<crosstalk::ShuttlePlan>(m, "ShuttlePlan")
        .def_readonly("distance", &crosstalk::ShuttlePlan::distance)
        .def_readonly("step_size", &crosstalk::ShuttlePlan::step_size)
        .def_readonly("step_period", &crosstalk::ShuttlePlan::step_period)
        .def_readonly("n_steps", &crosstalk::ShuttlePlan::n_steps)
        .def_readonly("total_time", &crosstalk::ShuttlePlan::total_time);

    py::class_<crosstalk::CrosstalkBudget>(m, "CrosstalkBudget")
        .def_readonly("per_measurement", &crosstalk::CrosstalkBudget::per_measurement)
        .def_readonly("n_star", &crosstalk::CrosstalkBudget::n_star)
        .def_readonly("per_measurement_gaussian",
                      &crosstalk::CrosstalkBudget::per_measurement_gaussian);

    m.def("fit_coherence", &crosstalk::fit_coherence, py::arg("points"));
    m.def("shuttle_time", &crosstalk::shuttle_time, py::arg("distance"),
          py::arg("step_size") = 5e-6, py::arg("step_period") = 2.32e-6);
    m.def("measurement_crosstalk", &crosstalk::measurement_crosstalk,
          py::arg("coherence_time"), py::arg("avg_detect_time"));
    m.def("absorption_crosstalk", &crosstalk::absorption_crosstalk, py::arg("distance"),
          py::arg("scatter_rate"), py::arg("exposure"), py::arg("wavelength"));
}
