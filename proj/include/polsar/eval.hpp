#pragma once

#include "polsar/labels.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polsar {

/// Row = true (user-defined) class, column = assigned class. Classes are 1..K internally
/// stored at index 0..K-1.
class ConfusionMatrix {
public:
    ConfusionMatrix(std::vector<std::string> names);

    std::size_t classes() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::uint64_t count(std::size_t truth, std::size_t assigned) const noexcept { return counts_[truth * classes() + assigned]; }
    void add(std::size_t truth, std::size_t assigned, std::uint64_t n = 1) noexcept { counts_[truth * classes() + assigned] += n; }

    std::uint64_t row_total(std::size_t truth) const noexcept;
    std::uint64_t total() const noexcept;

    /// Percent of row `truth` assigned to `assigned`; 0 for an empty row.
    double percent(std::size_t truth, std::size_t assigned) const noexcept;
    std::vector<std::vector<double>> percentages() const;

    /// Percentage of pixels on the diagonal, pixel-weighted.
    double overall_accuracy() const;
    /// Unweighted mean of per-class recall over non-empty rows, in percent.
    double mean_recall() const;

    /// CSV report: header, one row per true class at 2 decimals, then "overall,<value>".
    std::string to_csv() const;

private:
    std::vector<std::string> names_;
    std::vector<std::uint64_t> counts_;
};

/// Tabulates pixels with truth != 0. Predicted labels outside 1..K are an error.
/// Throws EmptyEvaluationError when no pixel is labeled.
ConfusionMatrix confusion(const LabelMask& truth, const ClassMap& predicted, std::vector<std::string> names);

/// Names "1".."K".
std::vector<std::string> default_class_names(std::size_t k);

double overall_accuracy(const ConfusionMatrix& cm);

/// Formats a percentage table in the confusion CSV layout. Values are printed with two decimals.
std::string format_confusion_csv(const std::vector<std::string>& names, const std::vector<std::vector<double>>& rows,
                                 double overall);

/// Parses the CSV layout back into names, rows and the overall value.
struct ConfusionReport {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    double overall = 0.0;
};
ConfusionReport parse_confusion_csv(const std::string& text, const std::string& source = "<csv>");

} // namespace polsar
