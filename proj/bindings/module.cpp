#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stepdown/constants.hpp"
#include "stepdown/metrics.hpp"
#include "stepdown/normal.hpp"
#include "stepdown/procedures.hpp"
#include "stepdown/report.hpp"
#include "stepdown/scenarios.hpp"
#include "stepdown/simulation.hpp"

namespace py = pybind11;
using namespace stepdown;

namespace {

ControlParams make_params(int s, double alpha, const std::optional<std::string>& gamma, int k) {
    ControlParams p;
    p.s = s;
    p.alpha = alpha;
    p.k = k;
    if (gamma) p.gamma = Rational::parse(*gamma);
    return p;
}

Recipe recipe_or_throw(const std::string& method) {
    const auto recipe = recipe_from(method);
    if (!recipe) throw std::invalid_argument("unknown method: " + method);
    return *recipe;
}

py::dict sequence_dict(const CriticalSequence& seq) {
    py::dict d;
    d["recipe"] = to_string(seq.recipe);
    d["s"] = seq.params.s;
    d["alpha"] = seq.params.alpha;
    d["gamma"] = seq.params.gamma.str();
    d["k"] = seq.params.k;
    d["values"] = seq.values;
    d["d_used"] = seq.d_used ? py::cast(*seq.d_used) : py::none();
    d["delta_scale"] = seq.delta_scale ? py::cast(*seq.delta_scale) : py::none();
    return d;
}

CriticalSequence sequence_from_args(const std::string& method, int s, double alpha,
                                    const std::optional<std::string>& gamma, int k,
                                    const std::optional<std::vector<double>>& deltas) {
    const Recipe recipe = recipe_or_throw(method);
    if (recipe_needs_gamma(recipe) && !gamma) {
        throw std::invalid_argument(std::string("gamma is required for method ") +
                                    to_string(recipe));
    }
    const ControlParams p = make_params(s, alpha, gamma, k);
    return make_sequence(recipe, p, deltas.value_or(std::vector<double>{}));
}

Scenario scenario_from_args(const std::string& name, int s, int num_true, double alpha,
                            const std::optional<std::string>& gamma, double rho, double shift,
                            bool independent_false,
                            const std::optional<std::vector<double>>& betas) {
    const auto kind = scenario_kind_from(name);
    if (!kind) throw std::invalid_argument("unknown scenario: " + name);
    switch (*kind) {
        case Scenario::Kind::independent: {
            AltLaw alt;  // point mass at zero: the hardest false-null law
            return make_independent(s, num_true < 0 ? s : num_true, alt);
        }
        case Scenario::Kind::equicorrelated:
            return make_equicorrelated(s, num_true < 0 ? s : num_true, rho, shift,
                                       independent_false);
        case Scenario::Kind::lemma31: {
            if (betas) return make_lemma31(s, *betas);
            if (!gamma) throw std::invalid_argument("gamma or betas required for lemma31");
            ControlParams p;
            p.s = s;
            p.alpha = alpha;
            p.gamma = Rational::parse(*gamma);
            return make_lemma31(s, sharp_lemma31_betas(p));
        }
        case Scenario::Kind::example31: return make_example31(alpha);
        case Scenario::Kind::remark31: return make_remark31(alpha);
        case Scenario::Kind::example41: return make_example41(alpha);
    }
    throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stepdown multiple-testing procedures: critical constants, rejection rules, "
              "reference grids and Monte Carlo estimation";

    m.def("harmonic", &harmonic, py::arg("j"), "Partial harmonic sum 1 + 1/2 + ... + 1/j");
    m.def("normal_cdf", &normal_cdf, py::arg("x"), "Standard normal CDF");

    m.def(
        "constants",
        [](const std::string& method, int s, double alpha, const std::optional<std::string>& gamma,
           int k, const std::optional<std::vector<double>>& deltas) {
            return sequence_dict(sequence_from_args(method, s, alpha, gamma, k, deltas));
        },
        py::arg("method"), py::arg("s"), py::arg("alpha"), py::arg("gamma") = py::none(),
        py::arg("k") = 1, py::arg("deltas") = py::none(),
        "Critical-value sequence for a named recipe");

    m.def(
        "d_value",
        [](int s, const std::string& gamma, const std::optional<std::vector<double>>& deltas) {
            ControlParams p;
            p.s = s;
            p.gamma = Rational::parse(gamma);
            const DResult res = d_value(p, deltas.value_or(std::vector<double>{}));
            py::dict d;
            d["d"] = res.d;
            d["argmax_num_true"] = res.argmax_num_true;
            return d;
        },
        py::arg("s"), py::arg("gamma"), py::arg("deltas") = py::none(),
        "Largest rescaling denominator over the number of true nulls");

    m.def(
        "n_cap",
        [](int s, const std::string& gamma, int num_true) {
            ControlParams p;
            p.s = s;
            p.gamma = Rational::parse(gamma);
            return n_cap(p, num_true);
        },
        py::arg("s"), py::arg("gamma"), py::arg("num_true"),
        "Number of summands that can contribute for a given number of true nulls");

    m.def(
        "convert_level",
        [](const std::string& direction, const std::string& gamma, double level) {
            LevelConversion dir;
            if (direction == "fdr_to_fdp") {
                dir = LevelConversion::fdr_to_fdp;
            } else if (direction == "fdp_to_fdr") {
                dir = LevelConversion::fdp_to_fdr;
            } else {
                throw std::invalid_argument("direction must be fdr_to_fdp or fdp_to_fdr");
            }
            return convert_levels(dir, Rational::parse(gamma), level);
        },
        py::arg("direction"), py::arg("gamma"), py::arg("level"),
        "Translate a nominal level between FDR control and FDP-tail control");

    m.def(
        "apply",
        [](const std::vector<double>& pvalues, const std::vector<double>& thresholds,
           const std::string& mode_name) {
            const auto mode = step_mode_from(mode_name);
            if (!mode) throw std::invalid_argument("unknown mode: " + mode_name);
            const RejectionOutcome out = apply(pvalues, thresholds, *mode);
            py::dict d;
            d["num_rejected"] = out.num_rejected;
            d["rejected"] = out.rejected;  // 0-based input positions
            return d;
        },
        py::arg("pvalues"), py::arg("thresholds"), py::arg("mode") = "stepdown",
        "Run a stepdown or stepup rule on raw p-values");

    m.def(
        "apply_method",
        [](const std::vector<double>& pvalues, const std::string& method, double alpha,
           const std::optional<std::string>& gamma, int k, const std::string& mode_name) {
            const auto seq = sequence_from_args(method, static_cast<int>(pvalues.size()), alpha,
                                                gamma, k, std::nullopt);
            const auto mode = step_mode_from(mode_name);
            if (!mode) throw std::invalid_argument("unknown mode: " + mode_name);
            PValueSet set;
            set.values = pvalues;
            const RejectionOutcome out = apply(set, seq, *mode);
            py::dict d;
            d["num_rejected"] = out.num_rejected;
            d["rejected"] = out.rejected;
            d["thresholds"] = seq.values;
            return d;
        },
        py::arg("pvalues"), py::arg("method"), py::arg("alpha"), py::arg("gamma") = py::none(),
        py::arg("k") = 1, py::arg("mode") = "stepdown",
        "Build a named critical sequence sized to the input and run it");

    m.def("table_csv", &table_csv, py::arg("which"), "Reference comparison grid as CSV text");
    m.def("figure_csv", &figure_csv, py::arg("which"), "Constant sequences behind a figure");

    m.def(
        "simulate",
        [](const std::string& scenario, const std::string& method, int s, double alpha,
           const std::optional<std::string>& gamma, int k, int num_true, long long trials,
           std::uint64_t seed, int workers, const std::string& mode_name, double rho, double shift,
           bool independent_false, const std::optional<std::vector<double>>& betas) {
            const Scenario sc = scenario_from_args(scenario, s, num_true, alpha, gamma, rho, shift,
                                                   independent_false, betas);
            const auto seq =
                sequence_from_args(method, s > 0 ? s : sc.s, alpha, gamma, k, std::nullopt);
            const auto mode = step_mode_from(mode_name);
            if (!mode) throw std::invalid_argument("unknown mode: " + mode_name);
            const SimulationReport report = run(sc, seq, *mode, trials, seed, workers);
            py::dict estimates;
            for (const auto& [name, est] : report.estimates) {
                py::dict e;
                e["mean"] = est.mean;
                e["se"] = est.se;
                estimates[py::cast(name)] = e;
            }
            py::dict d;
            d["scenario"] = to_string(report.scenario.kind);
            d["s"] = report.scenario.s;
            d["I"] = report.scenario.num_true;
            d["recipe"] = to_string(report.sequence.recipe);
            d["mode"] = to_string(report.mode);
            d["trials"] = report.trials;
            d["seed"] = report.seed;
            d["workers"] = report.workers;
            d["estimates"] = estimates;
            return d;
        },
        py::arg("scenario"), py::arg("method"), py::arg("s") = 0, py::arg("alpha") = 0.05,
        py::arg("gamma") = py::none(), py::arg("k") = 1, py::arg("I") = -1,
        py::arg("trials") = 10000, py::arg("seed") = 12345, py::arg("workers") = 1,
        py::arg("mode") = "stepdown", py::arg("rho") = 0.25, py::arg("shift") = 2.0,
        py::arg("independent_false") = false, py::arg("betas") = py::none(),
        "Monte Carlo estimation of FDP tail probability, FDR and k-FWER");
}
