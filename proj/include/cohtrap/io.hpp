// io.hpp: run configuration, CSV tables and JSON manifests
//
// CSV: RFC 4180 quoting, one header row, LF line endings, reals printed with
// 9 significant digits, empty cells for missing values. Every CSV written to
// disk is accompanied by <stem>.manifest.json, whose "config" member loads
// back through load_config.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cohtrap/dephasing.hpp"
#include "cohtrap/experiments.hpp"
#include "cohtrap/math/quadrature.hpp"
#include "cohtrap/qsl.hpp"

namespace cohtrap::io {

enum class Format { csv, json };

std::string_view to_string(Format format);
Format parse_format(std::string_view text);

struct RunConfig {
    ModelParams model;
    TrappingSpec trapping;
    math::QuadratureSpec quad;
    QslMode qsl_mode = QslMode::paper_literal;
    std::string output_path;
    Format format = Format::csv;
};

bool operator==(const RunConfig& a, const RunConfig& b);

nlohmann::json to_json(const ModelParams& params);
nlohmann::json to_json(const TrappingSpec& spec);
nlohmann::json to_json(const RunConfig& config);

/// Missing members keep their defaults; the result is validated. Accepts a
/// bare config object or a manifest carrying one under "config".
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// printf("%.9g"), with "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double v);

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_sweep_csv(std::ostream& out, const experiments::SweepResult& result);

nlohmann::json sweep_manifest(const experiments::SweepResult& result, const RunConfig& config,
                              std::string_view command);
nlohmann::json figure_manifest(const experiments::FigureDataset& dataset, const RunConfig& config);

/// results/fig1a.csv -> results/fig1a.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path);

/// Writes the CSV and its manifest; both byte-identical for identical input.
void write_table(const std::filesystem::path& csv_path, const experiments::SweepResult& result,
                 const nlohmann::json& manifest);

} // namespace cohtrap::io
