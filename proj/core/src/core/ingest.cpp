#include "autocast/core/ingest.hpp"

#include "autocast/core/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace autocast {
namespace {

std::string row_label(const SalesRecord& r, std::size_t position) {
    return "row " + std::to_string(r.row != 0 ? r.row : position + 1);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Splits one CSV line; fields may be double-quoted with "" as an escaped quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"' && trim(current).empty()) {
            quoted = true;
            was_quoted = true;
            current.clear();
        } else if (c == ',') {
            fields.emplace_back(was_quoted ? current : std::string(trim(current)));
            current.clear();
            was_quoted = false;
        } else {
            current += c;
        }
    }
    if (quoted) throw InputError("row " + std::to_string(line_no) + ": unterminated quoted field");
    fields.emplace_back(was_quoted ? current : std::string(trim(current)));
    return fields;
}

double parse_quantity(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value))
        throw InputError("row " + std::to_string(line_no) + ": invalid quantity '" + std::string(text) + "'");
    return value;
}

} // namespace

std::vector<SalesSeries> ingest_sales(std::span<const SalesRecord> records, Frequency frequency) {
    // product -> period index -> contributions (kept so summation order is canonical)
    std::map<std::string, std::map<std::int64_t, std::vector<double>>> buckets;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.product_id.empty()) throw InputError(row_label(r, i) + ": empty product_id");
        if (!std::isfinite(r.quantity)) throw InputError(row_label(r, i) + ": non-finite quantity");
        Period period(frequency, 0);
        try {
            period = Period::containing(frequency, parse_iso_date(r.date));
        } catch (const std::invalid_argument& e) {
            throw InputError(row_label(r, i) + ": " + e.what());
        }
        buckets[r.product_id][period.index()].push_back(r.quantity);
    }

    std::vector<SalesSeries> out;
    out.reserve(buckets.size());
    for (auto& [product, periods] : buckets) {
        const std::int64_t first = periods.begin()->first;
        const std::int64_t last = periods.rbegin()->first;
        std::vector<double> values(static_cast<std::size_t>(last - first + 1), 0.0);
        for (auto& [index, parts] : periods) {
            std::sort(parts.begin(), parts.end());
            double sum = 0.0;
            for (double q : parts) sum += q;
            values[static_cast<std::size_t>(index - first)] = std::max(0.0, sum);
        }
        out.emplace_back(product, Period(frequency, first), std::move(values));
    }
    return out;
}

std::vector<SalesRecord> read_sales_csv(std::istream& in) {
    std::vector<SalesRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        auto fields = split_csv_line(view, line_no);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "product_id" || fields[1] != "date" || fields[2] != "quantity")
                throw InputError("row " + std::to_string(line_no) + ": expected header 'product_id,date,quantity'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3)
            throw InputError("row " + std::to_string(line_no) + ": expected 3 fields, found " +
                             std::to_string(fields.size()));
        records.push_back({fields[0], fields[1], parse_quantity(fields[2], line_no), line_no});
    }
    if (!header_seen) throw InputError("sales CSV is missing the 'product_id,date,quantity' header");
    return records;
}

std::vector<SalesRecord> read_sales_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open sales file '" + path.string() + "'");
    return read_sales_csv(in);
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_sales_csv(std::ostream& out, std::span<const SalesSeries> corpus) {
    out << "product_id,date,quantity\n";
    for (const auto& s : corpus) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << csv_escape(s.product_id()) << ',' << (s.start() + static_cast<std::int64_t>(i)).to_string() << ','
                << format_double(s[i]) << '\n';
        }
    }
}

} // namespace autocast
