// Pareto-front export: averaged population matrices, CSV and SVG.

#include "mlrules/errors.hpp"
#include "mlrules/experiment.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cmath>

namespace mlrules {

std::vector<ParetoRow> average_populations(const std::vector<std::vector<FitnessTuple>>& populations) {
    if (populations.empty()) throw precondition_error("pareto: no populations given");
    const std::size_t n = populations.front().size();
    std::vector<ParetoRow> rows(n);
    for (auto population : populations) {
        if (population.size() != n) throw validation_error("pareto: populations have different sizes");
        std::ranges::sort(population, [](const FitnessTuple& a, const FitnessTuple& b) {
            return a.fscore != b.fscore ? a.fscore > b.fscore : a.size < b.size;
        });
        for (std::size_t i = 0; i < n; ++i) {
            rows[i].fscore += population[i].fscore;
            rows[i].size += static_cast<double>(population[i].size);
        }
    }
    const auto count = static_cast<double>(populations.size());
    for (auto& r : rows) {
        r.fscore /= count;
        r.size /= count;
        r.interpretability = 1.0 / r.size;
    }
    return rows;
}

std::vector<ParetoRow> pareto_rows(const std::vector<std::vector<FitnessTuple>>& populations) {
    const auto rows = average_populations(populations);
    const auto dominated = [](const ParetoRow& a, const ParetoRow& b) {   // b dominates a
        return b.fscore >= a.fscore && b.size <= a.size && (b.fscore > a.fscore || b.size < a.size);
    };
    std::vector<ParetoRow> front;
    for (const auto& r : rows)
        if (std::ranges::none_of(rows, [&](const ParetoRow& other) { return dominated(r, other); })) front.push_back(r);
    std::ranges::stable_sort(front, [](const ParetoRow& a, const ParetoRow& b) {
        return a.size != b.size ? a.size < b.size : a.fscore < b.fscore;
    });
    return front;
}

std::string pareto_csv(const std::vector<ParetoRow>& rows) {
    std::string out = "fscore,size,interpretability\n";
    for (const auto& r : rows)
        out += detail::format_fixed(r.fscore) + "," + detail::format_fixed(r.size) + "," +
               detail::format_fixed(r.interpretability) + "\n";
    return out;
}

std::string pareto_svg(const std::vector<ParetoRow>& rows, const std::string& title) {
    using detail::format_fixed;
    constexpr double width = 480, height = 360, left = 60, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    // Both axes live in [0, 1]; zoom to the data with a small margin.
    double x_min = 1, x_max = 0, y_min = 1, y_max = 0;
    for (const auto& r : rows) {
        x_min = std::min(x_min, r.interpretability);
        x_max = std::max(x_max, r.interpretability);
        y_min = std::min(y_min, r.fscore);
        y_max = std::max(y_max, r.fscore);
    }
    if (rows.empty()) x_min = y_min = 0, x_max = y_max = 1;
    const auto pad = [](double& lo, double& hi) {
        const double span = std::max(hi - lo, 0.02);
        lo = std::max(0.0, lo - span * 0.1);
        hi = std::min(1.0, hi + span * 0.1);
        if (hi <= lo) hi = lo + 0.01;
    };
    pad(x_min, x_max);
    pad(y_min, y_max);
    const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" viewBox=\"0 0 480 360\">\n";
    out += "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n";
    out += "<text x=\"240\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
    out += "<rect x=\"" + format_fixed(left, 1) + "\" y=\"" + format_fixed(top, 1) + "\" width=\"" + format_fixed(plot_w, 1) +
           "\" height=\"" + format_fixed(plot_h, 1) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x_min + (x_max - x_min) * k / 4.0;
        const double yv = y_min + (y_max - y_min) * k / 4.0;
        out += "<text x=\"" + format_fixed(px(xv), 1) + "\" y=\"" + format_fixed(top + plot_h + 16, 1) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + format_fixed(xv, 3) + "</text>\n";
        out += "<text x=\"" + format_fixed(left - 6, 1) + "\" y=\"" + format_fixed(py(yv) + 3, 1) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + format_fixed(yv, 3) + "</text>\n";
    }
    out += "<text x=\"" + format_fixed(left + plot_w / 2, 1) + "\" y=\"" + format_fixed(height - 10, 1) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">Interpretability (1 / rules)</text>\n";
    out += "<text x=\"16\" y=\"" + format_fixed(top + plot_h / 2, 1) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 " + format_fixed(top + plot_h / 2, 1) + ")\">F-Score</text>\n";
    for (const auto& r : rows)
        out += "<circle cx=\"" + format_fixed(px(r.interpretability), 2) + "\" cy=\"" + format_fixed(py(r.fscore), 2) +
               "\" r=\"4\" fill=\"steelblue\"/>\n";
    out += "</svg>\n";
    return out;
}

std::vector<ParetoRow> cmd_pareto(const std::vector<std::filesystem::path>& archives, const std::filesystem::path& out) {
    if (archives.empty()) throw validation_error("pareto: at least one archive is required");
    std::vector<std::vector<FitnessTuple>> populations;
    std::size_t features = 0, labels = 0;
    for (const auto& path : archives) {
        const auto archive = load_archive(path);
        if (populations.empty()) {
            features = archive.num_features;
            labels = archive.num_labels;
        } else if (archive.num_features != features || archive.num_labels != labels) {
            throw validation_error("pareto: archive '" + path.string() + "' has different dataset arities");
        }
        populations.push_back(archive.fitness());
    }
    const auto rows = pareto_rows(populations);
    write_text_file(out / "pareto.csv", pareto_csv(rows));
    write_text_file(out / "pareto.svg", pareto_svg(rows, "Predictive power vs. interpretability"));
    return rows;
}

}  // namespace mlrules
