#pragma once

#include <string>
#include <vector>

#include "swim/benchmark.hpp"
#include "swim/network.hpp"

namespace swim {

enum class LabelMode { Numeric, Categorical };

/// How to read a CSV: comma-separated, decimal floats, optional header.
/// Target columns are given by name (with a header) or by 0-based index.
/// Parsing is strict; impute_median instead fills empty feature cells with
/// the column median.
struct CsvSchema {
    bool has_header = true;
    std::vector<std::string> target_columns;
    LabelMode label_mode = LabelMode::Categorical;
    bool impute_median = false;
};

struct Dataset {
    Matrix x;
    Matrix y;
    std::vector<std::string> feature_names;
    /// Class names in first-seen order (categorical mode only); y is their
    /// one-hot encoding. labels holds the class index per row.
    std::vector<std::string> label_names;
    std::vector<std::size_t> labels;
};

/// Load a feature+target CSV. Ragged rows, non-numeric feature cells and
/// unknown target columns are rejected with the row/column location.
Dataset load_csv(const std::string& path, const CsvSchema& schema);

/// Load a feature-only CSV (for prediction).
Matrix load_feature_csv(const std::string& path, bool has_header);

/// Write/read a network as a self-describing text container with explicit
/// shapes and 17-significant-digit floats, so a round trip reproduces
/// forward outputs bitwise. Version or shape mismatches, truncation and
/// non-finite values are rejected.
void save_model(const SampledNetwork& net, const std::string& path);
SampledNetwork load_model(const std::string& path);

/// Results table with header method,depth,width,seed,metric,value,fit_seconds.
void write_results_csv(const std::string& path, const std::vector<ExperimentRow>& rows);

}  // namespace swim
