#pragma once

#include "vbp/data/csv.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vbp::data {

/// Raw rows plus the roles of their columns.
struct Dataset {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> raw;
    std::vector<int> line_numbers;
    std::vector<int> inputs;  // column indices
    std::vector<int> targets; // column indices
};

/// Numeric records in role order: inputs then targets.
struct NumericTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    int input_count = 0;

    int target_count() const { return static_cast<int>(columns.size()) - input_count; }
};

/// Assigns roles by column name. Throws ValidationError for an unknown or
/// repeated column, or when either role is empty.
Dataset make_dataset(CsvTable table, const std::vector<std::string>& inputs, const std::vector<std::string>& targets);

struct Validation {
    NumericTable valid;
    std::vector<std::size_t> valid_rows;    // indices into Dataset::raw
    std::vector<std::size_t> rejected_rows;
};

/// A row is valid when every input and target cell is a finite number.
Validation validate(const Dataset& ds);

/// Whole-field finite number parse.
bool parse_number(std::string_view text, double& out);

enum class SplitOrder { file, shuffled };

struct SplitSpec {
    int in_count = 0;
    SplitOrder order = SplitOrder::file;
    std::uint64_t seed = 0;
};

struct Split {
    NumericTable in_sample;
    NumericTable out_sample;
};

/// File order takes the first in_count rows; shuffled order applies a
/// seeded Fisher-Yates permutation first. Requires 0 < in_count < rows.
Split split(const NumericTable& table, const SplitSpec& spec);

} // namespace vbp::data
