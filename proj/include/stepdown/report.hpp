#pragma once

#include <string>
#include <vector>

namespace stepdown {

// One row of the published comparison grids. Table 1 pits the divisor D
// against the harmonic constant C_{floor(gamma*s)+1}; table 2 pits the
// eta-rescaling divisor against the closed-form bound
// (1/gamma)*max{C_floor(gamma*s), 1}. ratio is the second column over d.
struct TableRow {
    int s = 0;
    std::string gamma;
    double d = 0.0;
    double c_or_bound = 0.0;
    double ratio = 0.0;
};

std::vector<TableRow> table_rows(int which);

// CSV with header s,gamma,D,C_or_bound,ratio; values at 5 significant digits,
// which is the precision the reference grid is printed at.
std::string table_csv(int which);

struct FigureRow {
    int i = 0;
    double a = 0.0;
    double b = 0.0;
    double ratio = 0.0;  // a / b
};

// Figure 1: improved FDP constants vs proportional eta constants, s=100,
// gamma=0.1, alpha=0.05. Figure 2: FDP base constants vs FDR constants
// retargeted at FDP control (level alpha*gamma). Figure 3: FDP constants
// retargeted at FDR control (gamma=alpha/2, level alpha/(2-alpha)) vs FDR
// constants, s=100, alpha=0.05.
std::vector<FigureRow> figure_rows(int which);

std::string figure_csv(int which);

// Column header line for a figure's CSV.
std::string figure_header(int which);

// printf %g formatting with a given number of significant digits.
std::string format_sig(double v, int digits);

}  // namespace stepdown
