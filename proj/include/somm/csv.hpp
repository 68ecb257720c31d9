#pragma once

#include <stdexcept>
#include <string>

#include "somm/dataset.hpp"

namespace somm {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read a comma-separated file: header row, '.' decimal point, class label in
/// the last column. Labels are remapped to dense ids 0..C-1 in ascending
/// order of the original integer labels; class_names keeps the originals.
/// Throws CsvError naming the offending row/column on bad input.
Dataset read_csv(const std::string& path);

/// Inverse of read_csv: header, shortest round-trip formatting for features,
/// labels emitted as integers (original ids when class_names is populated).
void write_csv(const Dataset& data, const std::string& path);

/// Shortest decimal form that parses back to the same double ("nan", "inf"
/// for the non-finite values).
std::string format_number(double value);

}  // namespace somm
