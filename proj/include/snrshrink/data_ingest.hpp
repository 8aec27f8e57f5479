#pragma once

// Corpus ingestion: CSV parsing and normalization of p-values, z-values and
// (estimate, standard error) pairs into validated Estimate records.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "snrshrink/error.hpp"
#include "snrshrink/normal.hpp"

namespace snrshrink {

enum class Schema { p_value, z_value, b_s };

inline Schema parse_schema(std::string_view name) {
    if (name == "p_value") return Schema::p_value;
    if (name == "z_value") return Schema::z_value;
    if (name == "b_s") return Schema::b_s;
    throw InputError("unknown schema '" + std::string(name) + "' (expected p_value, z_value or b_s)");
}

inline std::string_view schema_name(Schema s) noexcept {
    switch (s) {
        case Schema::p_value: return "p_value";
        case Schema::z_value: return "z_value";
        case Schema::b_s: return "b_s";
    }
    return "?";
}

// What the record was built from.
enum class EstimateKind {
    estimate_and_se,  // b and s both observed
    signed_z,         // only z; b = z, s = 1
    magnitude_only,   // only |z| (from a two-sided p-value); b = |z|, s = 1
};

// One study result. b and s share units; z = b / s is dimensionless.
class Estimate {
public:
    static Estimate from_b_s(double b, double s) {
        if (!std::isfinite(b)) throw InputError("estimate b must be finite");
        if (!(s > 0.0) || !std::isfinite(s)) throw InputError("standard error s must be positive and finite");
        return Estimate(b, s, b / s, EstimateKind::estimate_and_se);
    }

    static Estimate from_z(double z) {
        if (!std::isfinite(z)) throw InputError("z-value must be finite");
        return Estimate(z, 1.0, z, EstimateKind::signed_z);
    }

    static Estimate from_abs_z(double abs_z) {
        if (!std::isfinite(abs_z) || abs_z < 0.0) throw InputError("|z| must be finite and nonnegative");
        return Estimate(abs_z, 1.0, abs_z, EstimateKind::magnitude_only);
    }

    double b() const noexcept { return b_; }
    double s() const noexcept { return s_; }
    double z() const noexcept { return z_; }
    EstimateKind kind() const noexcept { return kind_; }
    bool magnitude_only() const noexcept { return kind_ == EstimateKind::magnitude_only; }
    bool has_b_and_s() const noexcept { return kind_ == EstimateKind::estimate_and_se; }

    friend bool operator==(const Estimate&, const Estimate&) = default;

private:
    Estimate(double b, double s, double z, EstimateKind kind) : b_(b), s_(s), z_(z), kind_(kind) {}

    double b_;
    double s_;
    double z_;
    EstimateKind kind_;
};

// Immutable, non-empty collection of validated estimates.
class Corpus {
public:
    Corpus(std::vector<Estimate> records, std::string source_label)
        : records_(std::move(records)), source_label_(std::move(source_label)) {
        if (records_.empty()) throw InputError("corpus is empty");
        magnitude_only_ = std::all_of(records_.begin(), records_.end(),
                                      [](const Estimate& e) { return e.magnitude_only(); });
    }

    const std::vector<Estimate>& records() const noexcept { return records_; }
    const std::string& source_label() const noexcept { return source_label_; }
    bool magnitude_only() const noexcept { return magnitude_only_; }
    std::size_t size() const noexcept { return records_.size(); }

    std::vector<double> z_values() const {
        std::vector<double> out;
        out.reserve(records_.size());
        for (const auto& r : records_) out.push_back(r.z());
        return out;
    }

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    std::vector<Estimate> records_;
    std::string source_label_;
    bool magnitude_only_ = false;
};

// A row excluded from the corpus, or accepted with a caveat.
struct RowIssue {
    std::size_t line = 0;  // 1-based line number in the file
    std::string message;
    bool excluded = true;
};

struct IngestResult {
    Corpus corpus;
    std::vector<RowIssue> issues;
};

// Rejects the whole file when more than this fraction of data rows fail
// (and more than one row).
inline constexpr double kMaxRowFailureFraction = 0.10;

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        auto field = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
            field = field.substr(1, field.size() - 2);
        }
        out.push_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Locale-independent decimal parse; scientific notation allowed.
inline std::optional<double> parse_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

inline std::optional<std::size_t> find_column(const std::vector<std::string_view>& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

}  // namespace detail

// Parses a corpus from CSV text. The header must name `p`, `z`, or `b` and
// `s` depending on the schema; other columns are ignored. Lines starting with
// '#' and blank lines are skipped.
inline IngestResult parse_corpus(std::istream& in, Schema schema, std::string source_label) {
    std::vector<Estimate> records;
    std::vector<RowIssue> issues;
    std::optional<std::vector<std::string>> header;
    std::size_t value_col = 0;
    std::size_t s_col = 0;
    std::size_t data_rows = 0;
    std::size_t failed_rows = 0;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        const auto content = detail::trim(line);
        if (content.empty() || content.front() == '#') continue;

        const auto fields = detail::split_fields(content);
        if (!header) {
            header.emplace(fields.begin(), fields.end());
            const std::vector<std::string_view> names(header->begin(), header->end());
            const char* needed = schema == Schema::p_value ? "p" : schema == Schema::z_value ? "z" : "b";
            const auto col = detail::find_column(names, needed);
            if (!col) {
                throw InputError("malformed CSV: header lacks column '" + std::string(needed) + "' required by schema " +
                                 std::string(schema_name(schema)));
            }
            value_col = *col;
            if (schema == Schema::b_s) {
                const auto sc = detail::find_column(names, "s");
                if (!sc) throw InputError("malformed CSV: header lacks column 's' required by schema b_s");
                s_col = *sc;
            }
            continue;
        }

        ++data_rows;
        auto fail = [&](std::string msg) {
            ++failed_rows;
            issues.push_back({line_no, std::move(msg), true});
        };
        if (fields.size() != header->size()) {
            fail("expected " + std::to_string(header->size()) + " fields, found " + std::to_string(fields.size()));
            continue;
        }
        const auto value = detail::parse_number(fields[value_col]);
        if (!value) {
            fail("not a number: '" + std::string(fields[value_col]) + "'");
            continue;
        }
        try {
            switch (schema) {
                case Schema::p_value: {
                    const double p = *value;
                    if (p == 0.0) throw InputError("p = 0 has no finite z-value");
                    const double abs_z = p_to_abs_z(p);
                    if (abs_z == kMaxAbsZ) {
                        issues.push_back({line_no, "p too small; |z| clamped to 40", false});
                    }
                    records.push_back(Estimate::from_abs_z(abs_z));
                    break;
                }
                case Schema::z_value:
                    records.push_back(Estimate::from_z(*value));
                    break;
                case Schema::b_s: {
                    const auto s = detail::parse_number(fields[s_col]);
                    if (!s) throw InputError("not a number: '" + std::string(fields[s_col]) + "'");
                    records.push_back(Estimate::from_b_s(*value, *s));
                    break;
                }
            }
        } catch (const InputError& e) {
            fail(e.what());
        }
    }

    if (!header) throw InputError("malformed CSV: no header row");
    // A single bad row never rejects the file, so tiny files stay usable.
    const double allowed = std::max(1.0, kMaxRowFailureFraction * static_cast<double>(data_rows));
    if (static_cast<double>(failed_rows) > allowed) {
        std::ostringstream msg;
        msg << "rejected: " << failed_rows << " of " << data_rows << " rows failed validation";
        for (const auto& issue : issues) {
            if (issue.excluded) msg << "\n  line " << issue.line << ": " << issue.message;
        }
        throw InputError(msg.str());
    }
    if (records.empty()) throw InputError("no valid records after validation");
    return IngestResult{Corpus(std::move(records), std::move(source_label)), std::move(issues)};
}

inline IngestResult parse_corpus(const std::string& path, Schema schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open corpus file '" + path + "'");
    return parse_corpus(in, schema, path);
}

}  // namespace snrshrink
