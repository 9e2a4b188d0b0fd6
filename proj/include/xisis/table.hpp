#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xisis/screening.hpp"

namespace xisis {

/// Options for reading a delimited text table into a DataMatrix.
struct TableOptions {
    std::string path;
    char delimiter = ',';
    bool header = true;
    /// Column name, or "#k" for the 0-based column index k.
    std::string response;
    /// Explicit response label mapping, e.g. {"ALL": 0, "AML": 1}.
    std::map<std::string, double> labels;
    /// Columns (by name or "#k") to drop before building the predictor matrix.
    std::vector<std::string> ignore;
};

/// Splits RFC-4180 style text into records. Quoted fields may contain the
/// delimiter, doubled quotes and line breaks. A trailing newline does not
/// produce an empty record.
std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter);

/// Builds a DataMatrix from table text. The response is binary iff its
/// values are exactly {0, 1} after label mapping. Missing cells (empty or
/// "NA") are reported together with their row and column; no imputation.
DataMatrix ingest_table(std::string_view text, const TableOptions& options);

/// Reads options.path and calls ingest_table.
DataMatrix ingest_csv(const TableOptions& options);

struct Standardized {
    DataMatrix data;
    std::vector<std::string> warnings;
};

/// Centres every non-constant column and scales it to unit sample variance
/// (divisor n - 1). Constant columns are left unchanged and reported.
Standardized standardize(const DataMatrix& data);

/// Scores table with columns index,name,score,rank,selected. Index is the
/// 0-based predictor index, rank is 1-based, scores carry 17 significant
/// digits.
std::string scores_to_csv(const DataMatrix& data, const ScoreVector& scores,
                          const ScreeningResult& result);

nlohmann::json selection_to_json(const DataMatrix& data, const ScoreVector& scores,
                                 const ScreeningResult& result);

}  // namespace xisis
