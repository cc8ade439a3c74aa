#pragma once

#include "nlssc/types.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace nlssc {

enum class CsvLayout { RowsAreSamples, ColumnsAreSamples };

/// Reads a rectangular numeric CSV. A first row containing a non-numeric
/// cell is treated as a header. The result is always columns-are-samples.
DataMatrix load_csv(const std::filesystem::path& path, CsvLayout layout);

/// Parses CSV text (same rules as load_csv). Row/column numbers in error
/// messages are 1-based and count the header row.
DataMatrix parse_csv(std::string_view text, CsvLayout layout);

/// Writes X with one sample per row, 17 significant digits.
void save_csv(const DataMatrix& data, const std::filesystem::path& path);

/// One integer label per line (or a single comma-separated row).
LabelVector load_labels(const std::filesystem::path& path);
void save_labels(const LabelVector& labels, const std::filesystem::path& path);

struct SyntheticSpec {
    int num_subspaces = 3;
    int ambient_dim = 30;
    int subspace_dim = 4;
    int points_per_subspace = 50;
    double noise_std = 0.0;
    double affine_offset_scale = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Parses the compact form "<n>x<dim>@<ambient>[,n=<pts>][,noise=<s>][,offset=<r>][,seed=<s>]",
/// e.g. "3x4@30,n=50,noise=0.05". Unspecified fields keep their defaults.
SyntheticSpec parse_synthetic_spec(std::string_view text);

struct SyntheticData {
    DataMatrix data;
    LabelVector labels;
    /// Per-subspace orthonormal bases (ambient_dim x subspace_dim) and offsets,
    /// exposed for verification.
    std::vector<Matrix> bases;
    std::vector<Vector> offsets;
};

/// Samples a union of affine subspaces. Samples of subspace l occupy columns
/// [l*m, (l+1)*m) and carry label l+1. Deterministic under spec.seed.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// Contents of a results document.
struct ResultsDocument {
    LabelVector assignment;
    std::optional<double> ce;
    std::optional<double> nmi;
    int iterations = 0;
    bool converged = false;
    /// ||G^t - G^{t-1}||_inf, ||G+ - G||_inf, ||U - G||_inf, ||G^T 1 - 1||_inf
    std::array<double, 4> final_residuals{};
    double objective = 0.0;
    double wall_time_s = 0.0;
    nlohmann::json config_echo = nlohmann::json::object();
    /// Anything else worth recording (per-run metrics, restore counts, ...).
    nlohmann::json diagnostics = nlohmann::json::object();
    /// When set, Γ is written as (i, j, value) triplets of its nonzeros.
    const CodeMatrix* code = nullptr;
};

nlohmann::json to_json(const ResultsDocument& doc);

/// Writes the document as indented JSON. Throws IoError if path is unwritable.
void save_results(const ResultsDocument& doc, const std::filesystem::path& path);

}  // namespace nlssc
