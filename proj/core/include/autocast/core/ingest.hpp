#pragma once

#include "autocast/core/period.hpp"
#include "autocast/core/series.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace autocast {

/// One raw sales line: quantity sold (negative for returns) on a date.
struct SalesRecord {
    std::string product_id;
    std::string date;
    double quantity = 0.0;
    /// 1-based source line used in error messages; 0 means "position in the input".
    std::size_t row = 0;
};

/**
 * Aggregates raw records into one contiguous series per product.
 *
 * Quantities are summed into their containing period, negative per-period
 * totals are floored at zero and gaps between the first and last recorded
 * period are filled with zeros. Output is sorted by product id and is
 * independent of the record order. Throws InputError naming the offending row.
 */
std::vector<SalesSeries> ingest_sales(std::span<const SalesRecord> records, Frequency frequency);

/// Reads `product_id,date,quantity` CSV (header required).
std::vector<SalesRecord> read_sales_csv(std::istream& in);
std::vector<SalesRecord> read_sales_csv(const std::filesystem::path& path);

/// Writes series back in the ingestion CSV format, one row per period.
void write_sales_csv(std::ostream& out, std::span<const SalesSeries> corpus);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

} // namespace autocast
