#include "stm/emit.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace stm {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string emit_csv(const SolveResult& result, const std::optional<ExactSolution>& exact,
                     const Grid& grid) {
    const PowerSeries& y = result.iterates.back();
    std::string out = exact ? "x,approx,exact,abs_err\n" : "x,approx\n";
    for (double x : grid_points(grid)) {
        const double approx = evaluate(y, x);
        out += fmt17(x);
        out += ',';
        out += fmt17(approx);
        if (exact) {
            const double ex = evaluate_exact(*exact, x);
            out += ',';
            out += fmt17(ex);
            out += ',';
            out += fmt17(std::fabs(approx - ex));
        }
        out += '\n';
    }
    return out;
}

std::string emit_json(const SolveResult& result, const std::optional<ExactSolution>& exact,
                      const Grid& grid) {
    nlohmann::json doc;
    doc["converged"] = result.converged;
    if (result.fixed_point_at)
        doc["fixed_point_at"] = *result.fixed_point_at;
    else
        doc["fixed_point_at"] = nullptr;
    doc["residual_max"] = result.residual_max;
    if (result.error_max)
        doc["error_max"] = *result.error_max;
    else
        doc["error_max"] = nullptr;

    nlohmann::json iterates = nlohmann::json::array();
    for (const PowerSeries& it : result.iterates) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const Rational& c : it.coeffs()) coeffs.push_back(c.str());
        iterates.push_back(std::move(coeffs));
    }
    doc["iterates"] = std::move(iterates);

    const PowerSeries& y = result.iterates.back();
    nlohmann::json rows = nlohmann::json::array();
    for (double x : grid_points(grid)) {
        nlohmann::json row;
        row["x"] = x;
        const double approx = evaluate(y, x);
        row["approx"] = approx;
        if (exact) {
            const double ex = evaluate_exact(*exact, x);
            row["exact"] = ex;
            row["abs_err"] = std::fabs(approx - ex);
        }
        rows.push_back(std::move(row));
    }
    doc["grid"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace stm
