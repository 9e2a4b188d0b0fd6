#include "xisis/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "xisis/errors.hpp"
#include "xisis/format.hpp"

namespace xisis {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_missing(std::string_view cell) {
    cell = trim(cell);
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan";
}

bool parse_number(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    const auto* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

// Resolves "#k" or a header name to a column index.
std::size_t resolve_column(const std::string& selector, const std::vector<std::string>& header,
                           std::size_t width) {
    if (!selector.empty() && selector.front() == '#') {
        std::size_t idx = 0;
        const auto* b = selector.data() + 1;
        const auto* e = selector.data() + selector.size();
        auto [ptr, ec] = std::from_chars(b, e, idx);
        if (ec != std::errc() || ptr != e || b == e)
            throw InvalidInput("bad column selector '" + selector + "'");
        if (idx >= width)
            throw InvalidInput("column index " + std::to_string(idx) + " out of range (" +
                               std::to_string(width) + " columns)");
        return idx;
    }
    auto it = std::find(header.begin(), header.end(), selector);
    if (it == header.end()) throw InvalidInput("no column named '" + selector + "'");
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (ch == delimiter) {
            end_field();
        } else if (ch == '\n') {
            end_record();
        } else if (ch == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') continue;
            end_record();
        } else {
            field.push_back(ch);
            field_started = true;
        }
    }
    if (quoted) throw InvalidInput("unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

DataMatrix ingest_table(std::string_view text, const TableOptions& options) {
    auto records = parse_delimited(text, options.delimiter);
    // Blank lines carry no data.
    std::erase_if(records, [](const auto& r) { return r.size() == 1 && trim(r[0]).empty(); });
    if (records.empty()) throw InvalidInput("table is empty");

    const std::size_t width = records.front().size();
    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (options.header) {
        for (const auto& h : records.front()) header.emplace_back(trim(h));
        first_data = 1;
    } else {
        for (std::size_t k = 0; k < width; ++k) header.push_back("V" + std::to_string(k + 1));
    }
    // Data line numbers are reported 1-based as they appear in the file.
    for (std::size_t r = first_data; r < records.size(); ++r)
        if (records[r].size() != width)
            throw InvalidInput("line " + std::to_string(r + 1) + " has " +
                               std::to_string(records[r].size()) + " fields, expected " +
                               std::to_string(width));

    if (options.response.empty()) throw InvalidInput("no response column given");
    const std::size_t response_col = resolve_column(options.response, header, width);
    std::vector<char> dropped(width, 0);
    for (const auto& sel : options.ignore) dropped[resolve_column(sel, header, width)] = 1;
    dropped[response_col] = 1;

    std::vector<std::size_t> predictors;
    for (std::size_t k = 0; k < width; ++k)
        if (!dropped[k]) predictors.push_back(k);

    const std::size_t n = records.size() - first_data;
    Matrix x(n, predictors.size());
    std::vector<double> y(n);
    std::vector<std::string> missing;
    std::vector<std::string> bad;

    auto where = [&](std::size_t r, std::size_t k) {
        return "line " + std::to_string(r + 1) + ", column " + std::to_string(k) + " (" + header[k] + ")";
    };

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = i + first_data;
        const auto& rec = records[r];
        const std::string_view cell = trim(rec[response_col]);
        if (is_missing(cell) && options.labels.find(std::string(cell)) == options.labels.end()) {
            missing.push_back(where(r, response_col));
        } else if (!options.labels.empty()) {
            auto it = options.labels.find(std::string(cell));
            if (it == options.labels.end())
                bad.push_back(where(r, response_col) + ": unmapped label '" + std::string(cell) + "'");
            else
                y[i] = it->second;
        } else if (!parse_number(cell, y[i])) {
            bad.push_back(where(r, response_col) + ": '" + std::string(cell) + "' is not numeric");
        }
        for (std::size_t j = 0; j < predictors.size(); ++j) {
            const std::size_t k = predictors[j];
            if (is_missing(rec[k]))
                missing.push_back(where(r, k));
            else if (!parse_number(rec[k], x(i, j)))
                bad.push_back(where(r, k) + ": '" + std::string(trim(rec[k])) + "' is not numeric");
        }
    }

    auto join = [](const std::vector<std::string>& items) {
        std::string s;
        const std::size_t shown = std::min<std::size_t>(items.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) s += "\n  " + items[i];
        if (items.size() > shown) s += "\n  ... " + std::to_string(items.size() - shown) + " more";
        return s;
    };
    if (!missing.empty()) throw InvalidInput("missing values at:" + join(missing));
    if (!bad.empty()) throw InvalidInput("unparseable cells:" + join(bad));

    std::vector<std::string> names;
    for (auto k : predictors) names.push_back(header[k]);
    const ResponseKind kind = is_binary_response(y) ? ResponseKind::binary : ResponseKind::continuous;
    return DataMatrix(std::move(x), std::move(y), kind, std::move(names));
}

DataMatrix ingest_csv(const TableOptions& options) {
    std::ifstream in(options.path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + options.path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_table(buf.str(), options);
}

Standardized standardize(const DataMatrix& data) {
    Matrix x = data.x();
    std::vector<std::string> warnings;
    const std::size_t n = data.n();
    for (std::size_t k = 0; k < data.p(); ++k) {
        auto col = x.column(k);
        if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); })) {
            warnings.push_back("column " + std::to_string(k) + " (" + data.names()[k] +
                               ") is constant; left unstandardized");
            continue;
        }
        const double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double v : col) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        for (double& v : col) v = (v - mean) / sd;
    }
    std::vector<double> y(data.response().begin(), data.response().end());
    return {DataMatrix(std::move(x), std::move(y), data.kind(), data.names()), std::move(warnings)};
}

std::string scores_to_csv(const DataMatrix& data, const ScoreVector& scores,
                          const ScreeningResult& result) {
    std::vector<std::size_t> rank(scores.scores.size());
    for (std::size_t pos = 0; pos < result.ranking.size(); ++pos) rank[result.ranking[pos]] = pos + 1;

    std::ostringstream os;
    os << "index,name,score,rank,selected\n";
    for (std::size_t k = 0; k < scores.scores.size(); ++k) {
        std::string name = data.names()[k];
        if (name.find_first_of(",\"\n\r") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : name) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            name = quoted + "\"";
        }
        const bool selected = std::binary_search(result.selected.begin(), result.selected.end(), k);
        os << k << ',' << name << ',' << format_double(scores.scores[k]) << ',' << rank[k] << ','
           << (selected ? 1 : 0) << '\n';
    }
    return os.str();
}

nlohmann::json selection_to_json(const DataMatrix& data, const ScoreVector& scores,
                                 const ScreeningResult& result) {
    nlohmann::json j;
    j["method"] = std::string(to_string(scores.method));
    j["tie_seed"] = scores.tie_seed;
    j["n"] = data.n();
    j["p"] = data.p();
    j["response_kind"] = data.kind() == ResponseKind::binary ? "binary" : "continuous";
    if (const auto* t = std::get_if<TopD>(&result.selector)) {
        j["selector"] = {{"type", "top_d"}, {"d", t->d}};
    } else {
        const auto& th = std::get<Threshold>(result.selector);
        j["selector"] = {{"type", "threshold"}, {"c", th.c}, {"kappa", th.kappa}, {"n", th.n},
                         {"cutoff", th.cutoff}};
    }
    auto selected = nlohmann::json::array();
    for (auto k : result.selected)
        selected.push_back({{"index", k}, {"name", data.names()[k]}, {"score", scores.scores[k]}});
    j["selected"] = std::move(selected);
    j["degenerate_columns"] = scores.degenerate;
    j["warnings"] = scores.warnings;
    return j;
}

}  // namespace xisis
