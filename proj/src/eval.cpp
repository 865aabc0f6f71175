#include "polsar/eval.hpp"

#include "polsar/errors.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace polsar {

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> names)
    : names_(std::move(names)), counts_(names_.size() * names_.size(), 0) {
    if (names_.empty()) throw ConfigError("confusion matrix: need at least one class");
}

std::uint64_t ConfusionMatrix::row_total(std::size_t truth) const noexcept {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < classes(); ++j) s += count(truth, j);
    return s;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

double ConfusionMatrix::percent(std::size_t truth, std::size_t assigned) const noexcept {
    const auto n = row_total(truth);
    return n == 0 ? 0.0 : 100.0 * static_cast<double>(count(truth, assigned)) / static_cast<double>(n);
}

std::vector<std::vector<double>> ConfusionMatrix::percentages() const {
    std::vector<std::vector<double>> rows(classes(), std::vector<double>(classes()));
    for (std::size_t i = 0; i < classes(); ++i)
        for (std::size_t j = 0; j < classes(); ++j) rows[i][j] = percent(i, j);
    return rows;
}

double ConfusionMatrix::overall_accuracy() const {
    const auto n = total();
    if (n == 0) throw EmptyEvaluationError("confusion matrix is empty");
    std::uint64_t diag = 0;
    for (std::size_t i = 0; i < classes(); ++i) diag += count(i, i);
    return 100.0 * static_cast<double>(diag) / static_cast<double>(n);
}

double ConfusionMatrix::mean_recall() const {
    double sum = 0.0;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < classes(); ++i) {
        if (row_total(i) == 0) continue;
        sum += percent(i, i);
        ++rows;
    }
    if (rows == 0) throw EmptyEvaluationError("confusion matrix is empty");
    return sum / static_cast<double>(rows);
}

std::string ConfusionMatrix::to_csv() const { return format_confusion_csv(names_, percentages(), overall_accuracy()); }

ConfusionMatrix confusion(const LabelMask& truth, const ClassMap& predicted, std::vector<std::string> names) {
    if (truth.width != predicted.width || truth.height != predicted.height)
        throw ConfigError("confusion: truth is " + std::to_string(truth.width) + "x" + std::to_string(truth.height) +
                          ", prediction is " + std::to_string(predicted.width) + "x" +
                          std::to_string(predicted.height));
    ConfusionMatrix cm(std::move(names));
    const std::size_t k = cm.classes();
    for (std::size_t i = 0; i < truth.data.size(); ++i) {
        const std::size_t t = truth.data[i];
        if (t == 0) continue;
        const std::size_t p = predicted.data[i];
        if (t > k || p < 1 || p > k)
            throw ConfigError("confusion: label outside 1.." + std::to_string(k) + " at pixel " + std::to_string(i));
        cm.add(t - 1, p - 1);
    }
    if (cm.total() == 0) throw EmptyEvaluationError("confusion: ground truth has no labeled pixels");
    return cm;
}

std::vector<std::string> default_class_names(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back(std::to_string(i));
    return names;
}

double overall_accuracy(const ConfusionMatrix& cm) { return cm.overall_accuracy(); }

std::string format_confusion_csv(const std::vector<std::string>& names, const std::vector<std::vector<double>>& rows,
                                 double overall) {
    std::ostringstream out;
    out << "class";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << names.at(i);
        for (double v : rows[i]) out << ',' << fixed2(v);
        out << '\n';
    }
    out << "overall," << fixed2(overall) << '\n';
    return out.str();
}

ConfusionReport parse_confusion_csv(const std::string& text, const std::string& source) {
    ConfusionReport rep;
    std::size_t pos = 0;
    bool header = true;
    bool done = false;

    auto parse_number = [&](const std::string& cell, std::size_t offset) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size())
            throw FormatError(source, offset, "expected a number, got '" + cell + "'");
        return v;
    };

    while (pos < text.size()) {
        const std::size_t line_start = pos;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (done) throw FormatError(source, line_start, "content after the overall line");

        std::vector<std::string> cells;
        std::vector<std::size_t> offsets;
        std::size_t c = 0;
        for (;;) {
            const std::size_t comma = line.find(',', c);
            cells.push_back(line.substr(c, comma == std::string::npos ? std::string::npos : comma - c));
            offsets.push_back(line_start + c);
            if (comma == std::string::npos) break;
            c = comma + 1;
        }

        if (header) {
            if (cells.front() != "class") throw FormatError(source, line_start, "header must start with 'class'");
            rep.names.assign(cells.begin() + 1, cells.end());
            header = false;
        } else if (cells.front() == "overall") {
            if (cells.size() != 2) throw FormatError(source, line_start, "overall line must have one value");
            rep.overall = parse_number(cells[1], offsets[1]);
            done = true;
        } else {
            if (cells.size() != rep.names.size() + 1)
                throw FormatError(source, line_start, "row has " + std::to_string(cells.size() - 1) +
                                                          " values, expected " + std::to_string(rep.names.size()));
            std::vector<double> row;
            for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(parse_number(cells[k], offsets[k]));
            rep.rows.push_back(std::move(row));
        }
    }
    if (header) throw FormatError(source, 0, "missing header line");
    if (!done) throw FormatError(source, text.size(), "missing overall line");
    return rep;
}

} // namespace polsar
