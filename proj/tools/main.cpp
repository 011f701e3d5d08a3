#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stepdown/constants.hpp"
#include "stepdown/procedures.hpp"
#include "stepdown/report.hpp"
#include "stepdown/scenarios.hpp"
#include "stepdown/simulation.hpp"

namespace {

using nlohmann::json;
using namespace stepdown;

constexpr int kSchemaVersion = 1;

const std::vector<std::string> kMethodTags = {
    "holm",   "kfwer", "fdp-base", "fdp-lr",           "fdp-improved",     "rescaled-custom",
    "eta-i",  "eta-ii", "fdr-stepdown", "fdr-sd",      "fdr-conservative", "bh-stepup"};

const std::vector<std::string> kScenarioTags = {"independent", "equicorrelated", "lemma31",
                                                "example31",   "remark31",       "example41"};

struct MethodFlags {
    std::string method;
    int s = 0;
    double alpha = 0.05;
    std::string gamma;
    int k = 1;
    std::string deltas_path;
};

void add_method_flags(CLI::App* cmd, MethodFlags& mf) {
    cmd->add_option("--method", mf.method, "Critical-value recipe")
        ->required()
        ->check(CLI::IsMember(kMethodTags));
    cmd->add_option("--s", mf.s, "Number of hypotheses");
    cmd->add_option("--alpha", mf.alpha, "Nominal level in (0,1)");
    cmd->add_option("--gamma", mf.gamma, "FDP threshold as a decimal string, e.g. 0.1");
    cmd->add_option("--k", mf.k, "Order for the k-FWER recipe");
    cmd->add_option("--deltas", mf.deltas_path,
                    "File with s nondecreasing deltas (rescaled-custom only)");
}

double parse_double(const std::string& text, const std::string& where) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": not a number: '" + text + "'");
    }
    if (pos != text.size()) {
        throw std::runtime_error(where + ": not a number: '" + text + "'");
    }
    return v;
}

// One value per line; a single non-numeric first line is treated as a header.
std::vector<double> read_column_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            values.push_back(parse_double(line, path + ":" + std::to_string(lineno)));
        } catch (const std::runtime_error&) {
            if (lineno == 1) continue;  // header
            throw;
        }
    }
    if (values.empty()) throw std::runtime_error(path + ": no values found");
    return values;
}

PValueSet read_pvalues_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    PValueSet out;
    std::string line;
    int lineno = 0;
    int columns = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 1 && fields.size() != 2) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'p' or 'id,p'");
        }
        const std::string where = path + ":" + std::to_string(lineno);
        double p = 0.0;
        try {
            p = parse_double(fields.back(), where);
        } catch (const std::runtime_error&) {
            if (out.values.empty() && lineno == 1) {
                columns = static_cast<int>(fields.size());
                continue;  // header row
            }
            throw;
        }
        if (columns == 0) columns = static_cast<int>(fields.size());
        if (static_cast<int>(fields.size()) != columns) {
            throw std::runtime_error(where + ": inconsistent column count");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::runtime_error(where + ": p-value outside [0, 1]");
        }
        if (columns == 2) out.ids.push_back(fields.front());
        out.values.push_back(p);
    }
    if (out.values.empty()) throw std::runtime_error(path + ": no p-values found");
    return out;
}

ControlParams build_params(const MethodFlags& mf, Recipe recipe) {
    ControlParams p;
    p.s = mf.s;
    p.alpha = mf.alpha;
    p.k = mf.k;
    if (recipe_needs_gamma(recipe)) {
        if (mf.gamma.empty()) {
            throw std::runtime_error(std::string("--gamma is required for method ") +
                                     to_string(recipe));
        }
        p.gamma = Rational::parse_decimal(mf.gamma);
    } else if (!mf.gamma.empty()) {
        p.gamma = Rational::parse_decimal(mf.gamma);
    }
    return p;
}

CriticalSequence build_sequence(const MethodFlags& mf) {
    const auto recipe = recipe_from(mf.method);
    if (!recipe) throw std::runtime_error("unknown method: " + mf.method);
    const ControlParams p = build_params(mf, *recipe);
    std::vector<double> deltas;
    if (*recipe == Recipe::rescaled_custom) {
        if (mf.deltas_path.empty()) {
            throw std::runtime_error("--deltas is required for method rescaled-custom");
        }
        deltas = read_column_file(mf.deltas_path);
    } else if (!mf.deltas_path.empty()) {
        throw std::runtime_error("--deltas only applies to method rescaled-custom");
    }
    return make_sequence(*recipe, p, deltas);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

json params_json(const ControlParams& p) {
    return json{{"s", p.s}, {"alpha", p.alpha}, {"gamma", p.gamma.str()}, {"k", p.k}};
}

json scenario_json(const Scenario& sc) {
    json j{{"name", to_string(sc.kind)}, {"s", sc.s}, {"I", sc.num_true}};
    switch (sc.kind) {
        case Scenario::Kind::independent:
            j["alt"] = json{{"kind", sc.alt.kind == AltLaw::Kind::point_mass ? "point" : "power"},
                            {"epsilon", sc.alt.epsilon},
                            {"exponent", sc.alt.exponent}};
            break;
        case Scenario::Kind::equicorrelated:
            j["rho"] = sc.rho;
            j["shift"] = sc.shift;
            j["independent_false"] = sc.independent_false;
            break;
        case Scenario::Kind::lemma31:
        case Scenario::Kind::remark31:
            j["betas"] = sc.betas;
            j["alpha"] = sc.alpha;
            break;
        case Scenario::Kind::example31:
        case Scenario::Kind::example41:
            j["alpha"] = sc.alpha;
            break;
    }
    return j;
}

int cmd_constants(const MethodFlags& mf, const std::string& out_path) {
    const CriticalSequence seq = build_sequence(mf);
    std::string text = "i,alpha_i\n";
    for (size_t i = 0; i < seq.values.size(); ++i) {
        text += std::to_string(i + 1);
        text += ',';
        text += format_sig(seq.values[i], 6);
        text += '\n';
    }
    emit(text, out_path);
    return 0;
}

int cmd_apply(const MethodFlags& mf, const std::string& pvalues_path, const std::string& mode_name,
              const std::string& out_path) {
    PValueSet pvals = read_pvalues_csv(pvalues_path);
    MethodFlags resolved = mf;
    if (resolved.s == 0) resolved.s = static_cast<int>(pvals.values.size());
    const CriticalSequence seq = build_sequence(resolved);
    const auto mode = step_mode_from(mode_name);
    if (!mode) throw std::runtime_error("unknown mode: " + mode_name);
    const RejectionOutcome outcome = apply(pvals, seq, *mode);

    json rejected = json::array();
    for (int idx : outcome.rejected) {
        if (!pvals.ids.empty()) {
            rejected.push_back(pvals.ids[static_cast<size_t>(idx)]);
        } else {
            rejected.push_back(idx + 1);  // 1-based when no ids are given
        }
    }
    json trace = json::array();
    for (const auto& row : outcome.trace) {
        json r{{"rank", row.rank},
               {"p", row.p},
               {"threshold", row.threshold},
               {"rejected", row.rejected}};
        if (!pvals.ids.empty()) {
            r["id"] = pvals.ids[static_cast<size_t>(row.index)];
        } else {
            r["id"] = row.index + 1;
        }
        trace.push_back(r);
    }
    json j{{"schema_version", kSchemaVersion},
           {"mode", to_string(outcome.mode)},
           {"recipe", to_string(seq.recipe)},
           {"params", params_json(seq.params)},
           {"num_rejected", outcome.num_rejected},
           {"rejected_ids", rejected},
           {"thresholds", seq.values},
           {"trace", trace}};
    if (seq.d_used) j["d_used"] = *seq.d_used;
    if (seq.delta_scale) j["delta_scale"] = *seq.delta_scale;
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

struct SimulateFlags {
    MethodFlags method;
    std::string scenario;
    std::string mode_name = "stepdown";
    long long trials = 200000;
    std::uint64_t seed = 12345;
    int workers = 1;
    int num_true = -1;
    double rho = 0.25;
    double shift = 2.0;
    bool independent_false = false;
    std::string alt_kind = "point";
    double alt_eps = 0.0;
    double alt_exponent = 4.0;
    std::string betas_path;
};

Scenario build_scenario(const SimulateFlags& sf) {
    const auto kind = scenario_kind_from(sf.scenario);
    if (!kind) throw std::runtime_error("unknown scenario: " + sf.scenario);
    switch (*kind) {
        case Scenario::Kind::independent: {
            if (sf.method.s < 1) throw std::runtime_error("--s is required for this scenario");
            AltLaw alt;
            if (sf.alt_kind == "point") {
                alt.kind = AltLaw::Kind::point_mass;
            } else if (sf.alt_kind == "power") {
                alt.kind = AltLaw::Kind::power;
            } else {
                throw std::runtime_error("unknown alt law: " + sf.alt_kind);
            }
            alt.epsilon = sf.alt_eps;
            alt.exponent = sf.alt_exponent;
            const int num_true = sf.num_true < 0 ? sf.method.s : sf.num_true;
            return make_independent(sf.method.s, num_true, alt);
        }
        case Scenario::Kind::equicorrelated: {
            if (sf.method.s < 1) throw std::runtime_error("--s is required for this scenario");
            const int num_true = sf.num_true < 0 ? sf.method.s : sf.num_true;
            return make_equicorrelated(sf.method.s, num_true, sf.rho, sf.shift,
                                       sf.independent_false);
        }
        case Scenario::Kind::lemma31: {
            if (sf.method.s < 1) throw std::runtime_error("--s is required for this scenario");
            if (!sf.betas_path.empty()) {
                return make_lemma31(sf.method.s, read_column_file(sf.betas_path));
            }
            if (sf.method.gamma.empty()) {
                throw std::runtime_error(
                    "--gamma is required to derive the default lemma31 betas");
            }
            ControlParams p;
            p.s = sf.method.s;
            p.alpha = sf.method.alpha;
            p.gamma = Rational::parse_decimal(sf.method.gamma);
            return make_lemma31(p.s, sharp_lemma31_betas(p));
        }
        case Scenario::Kind::example31: return make_example31(sf.method.alpha);
        case Scenario::Kind::remark31: return make_remark31(sf.method.alpha);
        case Scenario::Kind::example41: return make_example41(sf.method.alpha);
    }
    throw std::runtime_error("unknown scenario: " + sf.scenario);
}

int cmd_simulate(const SimulateFlags& sf, const std::string& out_path) {
    const Scenario scenario = build_scenario(sf);
    MethodFlags resolved = sf.method;
    if (resolved.s == 0) resolved.s = scenario.s;
    const CriticalSequence seq = build_sequence(resolved);
    const auto mode = step_mode_from(sf.mode_name);
    if (!mode) throw std::runtime_error("unknown mode: " + sf.mode_name);

    const SimulationReport report = run(scenario, seq, *mode, sf.trials, sf.seed, sf.workers);

    json estimates;
    for (const auto& [name, est] : report.estimates) {
        estimates[name] = json{{"mean", est.mean}, {"se", est.se}};
    }
    json j{{"schema_version", kSchemaVersion},
           {"scenario", scenario_json(report.scenario)},
           {"recipe", to_string(report.sequence.recipe)},
           {"mode", to_string(report.mode)},
           {"params", params_json(report.sequence.params)},
           {"trials", report.trials},
           {"seed", report.seed},
           {"workers", report.workers},
           {"estimates", estimates}};
    if (report.sequence.d_used) j["d_used"] = *report.sequence.d_used;
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stepdown multiple-testing procedures: critical constants, "
                 "procedure application, reference grids and Monte Carlo checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file ([subcommand] sections, key=value)");
    app.allow_config_extras(false);

    MethodFlags constants_flags;
    std::string constants_out;
    auto* constants_cmd =
        app.add_subcommand("constants", "Print a critical-value sequence as CSV");
    add_method_flags(constants_cmd, constants_flags);
    constants_cmd->get_option("--s")->required();
    constants_cmd->get_option("--alpha")->required();
    constants_cmd->add_option("--out", constants_out, "Write to a file instead of stdout");

    MethodFlags apply_flags;
    std::string apply_pvalues, apply_mode = "stepdown", apply_out;
    auto* apply_cmd = app.add_subcommand("apply", "Apply a procedure to a p-value file");
    add_method_flags(apply_cmd, apply_flags);
    apply_cmd->add_option("--pvalues", apply_pvalues, "CSV file: 'id,p' or a single 'p' column")
        ->required();
    apply_cmd->add_option("--mode", apply_mode, "stepdown or stepup")
        ->check(CLI::IsMember({"stepdown", "stepup"}));
    apply_cmd->add_option("--out", apply_out, "Write to a file instead of stdout");

    int table_which = 0;
    std::string table_out;
    auto* table_cmd = app.add_subcommand("table", "Reproduce a reference comparison grid");
    table_cmd->add_option("which", table_which, "1 or 2")->required()->check(CLI::Range(1, 2));
    table_cmd->add_option("--out", table_out, "Write to a file instead of stdout");

    int figure_which = 0;
    std::string figure_out;
    auto* figure_cmd = app.add_subcommand("figure", "Emit constant sequences behind a figure");
    figure_cmd->add_option("which", figure_which, "1, 2 or 3")
        ->required()
        ->check(CLI::Range(1, 3));
    figure_cmd->add_option("--out", figure_out, "Write to a file instead of stdout");

    SimulateFlags sim_flags;
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo error-rate estimation");
    add_method_flags(sim_cmd, sim_flags.method);
    sim_cmd->add_option("--scenario", sim_flags.scenario, "Sampling scenario")
        ->required()
        ->check(CLI::IsMember(kScenarioTags));
    sim_cmd->add_option("--mode", sim_flags.mode_name, "stepdown or stepup")
        ->check(CLI::IsMember({"stepdown", "stepup"}));
    sim_cmd->add_option("--trials", sim_flags.trials, "Number of Monte Carlo trials")
        ->envname("STEPDOWN_TRIALS")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim_flags.seed, "Master seed");
    sim_cmd->add_option("--workers", sim_flags.workers, "Worker threads")
        ->envname("STEPDOWN_WORKERS")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--I", sim_flags.num_true, "Number of true nulls (default: all)");
    sim_cmd->add_option("--rho", sim_flags.rho, "Equicorrelation of the latent normals");
    sim_cmd->add_option("--shift", sim_flags.shift, "Mean shift of false-null statistics");
    sim_cmd->add_flag("--indep-false", sim_flags.independent_false,
                      "Draw false-null statistics independently of the common factor");
    sim_cmd->add_option("--alt", sim_flags.alt_kind, "False-null law: point or power")
        ->check(CLI::IsMember({"point", "power"}));
    sim_cmd->add_option("--alt-eps", sim_flags.alt_eps, "Location of the point-mass law");
    sim_cmd->add_option("--alt-a", sim_flags.alt_exponent, "Exponent of the power law");
    sim_cmd->add_option("--betas", sim_flags.betas_path, "File of betas for scenario lemma31");
    sim_cmd->add_option("--out", sim_out, "Write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (constants_cmd->parsed()) return cmd_constants(constants_flags, constants_out);
        if (apply_cmd->parsed()) {
            return cmd_apply(apply_flags, apply_pvalues, apply_mode, apply_out);
        }
        if (table_cmd->parsed()) {
            emit(table_csv(table_which), table_out);
            return 0;
        }
        if (figure_cmd->parsed()) {
            emit(figure_csv(figure_which), figure_out);
            return 0;
        }
        if (sim_cmd->parsed()) return cmd_simulate(sim_flags, sim_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
