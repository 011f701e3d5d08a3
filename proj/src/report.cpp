#include "stepdown/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <stdexcept>

#include "stepdown/constants.hpp"

namespace stepdown {

namespace {

struct GridPoint {
    const char* gamma;
    int s;
};

// The published grid: gamma blocks in increasing order, each with its own
// list of s values.
constexpr GridPoint kGrid[] = {
    {"0.01", 100}, {"0.01", 250}, {"0.01", 500}, {"0.01", 1000}, {"0.01", 2000}, {"0.01", 5000},
    {"0.05", 25},  {"0.05", 50},  {"0.05", 100}, {"0.05", 250},  {"0.05", 500},  {"0.05", 1000},
    {"0.05", 2000}, {"0.05", 5000},
    {"0.1", 10},   {"0.1", 25},   {"0.1", 50},   {"0.1", 100},   {"0.1", 250},   {"0.1", 500},
    {"0.1", 1000}, {"0.1", 2000}, {"0.1", 5000},
};

ControlParams grid_params(const GridPoint& g) {
    ControlParams p;
    p.s = g.s;
    p.alpha = 0.05;  // tables do not depend on alpha
    p.gamma = Rational::parse(g.gamma);
    return p;
}

}  // namespace

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::vector<TableRow> table_rows(int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("table must be 1 or 2");
    std::vector<TableRow> rows;
    rows.reserve(std::size(kGrid));
    for (const auto& g : kGrid) {
        const ControlParams p = grid_params(g);
        TableRow row;
        row.s = g.s;
        row.gamma = g.gamma;
        const std::int64_t gs = p.gamma.floor_mul(p.s);
        if (which == 1) {
            row.d = d_value(p).d;
            row.c_or_bound = harmonic(static_cast<int>(gs) + 1);
        } else {
            std::vector<double> eta(p.s);
            for (int i = 1; i <= p.s; ++i) eta[i - 1] = static_cast<double>(i) / p.s;
            row.d = d_value(p, eta).d;
            row.c_or_bound =
                std::max(harmonic(static_cast<int>(gs)), 1.0) / p.gamma.to_double();
        }
        row.ratio = row.c_or_bound / row.d;
        rows.push_back(row);
    }
    return rows;
}

std::string table_csv(int which) {
    std::string out = "s,gamma,D,C_or_bound,ratio\n";
    for (const auto& row : table_rows(which)) {
        out += std::to_string(row.s);
        out += ',';
        out += row.gamma;
        out += ',';
        out += format_sig(row.d, 5);
        out += ',';
        out += format_sig(row.c_or_bound, 5);
        out += ',';
        out += format_sig(row.ratio, 5);
        out += '\n';
    }
    return out;
}

std::string figure_header(int which) {
    switch (which) {
        case 1: return "i,alpha_improved,eta_prime,ratio";
        case 2: return "i,alpha_fdp,alpha_fdr_tuned_for_fdp,ratio";
        case 3: return "i,alpha_fdp_tuned_for_fdr,alpha_fdr,ratio";
        default: throw std::invalid_argument("figure must be 1, 2 or 3");
    }
}

std::vector<FigureRow> figure_rows(int which) {
    ControlParams p;
    p.s = 100;
    p.alpha = 0.05;
    p.gamma = Rational(1, 10);

    std::vector<double> a, b;
    switch (which) {
        case 1: {
            a = fdp_improved_constants(p).values;
            b = eta_constants(p, EtaVariant::scaled_by_d).values;
            break;
        }
        case 2: {
            a = fdp_base_constants(p).values;
            ControlParams q = p;
            // FDR control at level alpha*gamma implies FDP control at alpha
            q.alpha = p.alpha * p.gamma.to_double();
            b = fdr_stepdown_constants(q).values;
            break;
        }
        case 3: {
            ControlParams q = p;
            // FDP control with gamma=alpha/2 at level alpha/(2-alpha)
            // implies FDR control at alpha
            q.gamma = Rational(1, 40);
            q.alpha = p.alpha / (2.0 - p.alpha);
            a = fdp_base_constants(q).values;
            b = fdr_stepdown_constants(p).values;
            break;
        }
        default:
            throw std::invalid_argument("figure must be 1, 2 or 3");
    }

    std::vector<FigureRow> rows(p.s);
    for (int i = 0; i < p.s; ++i) {
        rows[i] = {i + 1, a[i], b[i], a[i] / b[i]};
    }
    return rows;
}

std::string figure_csv(int which) {
    std::string out = figure_header(which) + "\n";
    for (const auto& row : figure_rows(which)) {
        out += std::to_string(row.i);
        out += ',';
        out += format_sig(row.a, 6);
        out += ',';
        out += format_sig(row.b, 6);
        out += ',';
        out += format_sig(row.ratio, 6);
        out += '\n';
    }
    return out;
}

}  // namespace stepdown
