#pragma once

#include <filesystem>
#include <string>

#include "cleanroom/dataset.hpp"

namespace cleanroom {

/// Shortest exact decimal representation of a double (round-trip safe,
/// locale independent). Used everywhere a float reaches a file so repeated
/// runs are byte identical.
std::string format_double(double value);

/// Loads the dataset CSV format: a header of feature names, then a required
/// trailing `label` column and an optional trailing `is_poison` column. An
/// optional leading `row_id` column supplies row ids; otherwise ids follow
/// file order. Errors carry row/column coordinates.
Dataset load_numeric_csv(const std::filesystem::path& path);

/// Writes the same format, emitting `row_id` and `is_poison` columns only
/// when the dataset has non-default ids / a poison mask.
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace cleanroom
