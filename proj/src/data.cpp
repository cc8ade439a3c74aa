#include "nlssc/data.hpp"

#include "nlssc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace nlssc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

}  // namespace

DataMatrix parse_csv(std::string_view text, CsvLayout layout) {
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool first = true;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        const auto line = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        start = pos == std::string_view::npos ? text.size() + 1 : pos + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto cells = split(line, ',');
        std::vector<double> row;
        row.reserve(cells.size());
        std::size_t bad_col = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v) {
                bad_col = c + 1;
                break;
            }
            if (!std::isfinite(*v)) {
                throw MalformedInputError("non-finite value at row " + std::to_string(line_no) +
                                          ", column " + std::to_string(c + 1));
            }
            row.push_back(*v);
        }
        if (bad_col != 0) {
            if (first) {
                first = false;
                continue;  // header
            }
            throw MalformedInputError("non-numeric value '" + std::string(cells[bad_col - 1]) +
                                      "' at row " + std::to_string(line_no) + ", column " +
                                      std::to_string(bad_col));
        }
        first = false;
        if (rows.empty()) {
            width = row.size();
        } else if (row.size() != width) {
            throw DimensionError("row " + std::to_string(line_no) + " has " +
                                 std::to_string(row.size()) + " columns, expected " +
                                 std::to_string(width));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw MalformedInputError("CSV contains no numeric rows");

    const auto n_rows = static_cast<Index>(rows.size());
    const auto n_cols = static_cast<Index>(width);
    Matrix m(n_rows, n_cols);
    for (Index r = 0; r < n_rows; ++r)
        for (Index c = 0; c < n_cols; ++c) m(r, c) = rows[r][c];

    DataMatrix out;
    out.values = layout == CsvLayout::RowsAreSamples ? Matrix(m.transpose()) : m;
    return out;
}

DataMatrix load_csv(const std::filesystem::path& path, CsvLayout layout) {
    return parse_csv(read_file(path), layout);
}

void save_csv(const DataMatrix& data, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << std::setprecision(17);
    for (Index i = 0; i < data.samples(); ++i) {
        for (Index m = 0; m < data.dim(); ++m) {
            if (m) out << ',';
            out << data.values(m, i);
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

LabelVector load_labels(const std::filesystem::path& path) {
    const auto m = parse_csv(read_file(path), CsvLayout::ColumnsAreSamples).values;
    if (m.rows() != 1 && m.cols() != 1)
        throw DimensionError("label file must be a single row or a single column");
    LabelVector labels;
    labels.reserve(static_cast<std::size_t>(m.size()));
    for (Index i = 0; i < m.size(); ++i) {
        const double v = m.data()[i];
        if (v != std::round(v)) throw MalformedInputError("non-integer label " + std::to_string(v));
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

void save_labels(const LabelVector& labels, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    for (int l : labels) out << l << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

void SyntheticSpec::validate() const {
    if (num_subspaces < 1) throw ParameterError("num_subspaces must be >= 1");
    if (subspace_dim < 1 || subspace_dim >= ambient_dim)
        throw ParameterError("need 1 <= subspace_dim < ambient_dim");
    if (points_per_subspace <= subspace_dim)
        throw ParameterError("points_per_subspace must exceed subspace_dim");
    if (!(noise_std >= 0.0) || !(affine_offset_scale >= 0.0))
        throw ParameterError("noise_std and affine_offset_scale must be >= 0");
}

SyntheticSpec parse_synthetic_spec(std::string_view text) {
    SyntheticSpec spec;
    const auto fields = split(text, ',');
    auto to_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw MalformedInputError("bad integer '" + std::string(s) + "' in generator spec");
        return v;
    };
    auto to_real = [&](std::string_view s) {
        const auto v = parse_number(s);
        if (!v) throw MalformedInputError("bad number '" + std::string(s) + "' in generator spec");
        return *v;
    };

    const auto head = fields.front();
    const auto x = head.find('x');
    const auto at = head.find('@');
    if (x == std::string_view::npos || at == std::string_view::npos || at < x)
        throw MalformedInputError("generator spec must start with <n>x<dim>@<ambient>");
    spec.num_subspaces = to_int(head.substr(0, x));
    spec.subspace_dim = to_int(head.substr(x + 1, at - x - 1));
    spec.ambient_dim = to_int(head.substr(at + 1));

    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string_view::npos)
            throw MalformedInputError("expected key=value, got '" + std::string(fields[i]) + "'");
        const auto key = fields[i].substr(0, eq);
        const auto value = fields[i].substr(eq + 1);
        if (key == "n") {
            spec.points_per_subspace = to_int(value);
        } else if (key == "noise") {
            spec.noise_std = to_real(value);
        } else if (key == "offset") {
            spec.affine_offset_scale = to_real(value);
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(to_int(value));
        } else {
            throw MalformedInputError("unknown generator key '" + std::string(key) + "'");
        }
    }
    spec.validate();
    return spec;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    auto gaussian = [&](Index rows, Index cols) {
        Matrix m(rows, cols);
        for (Index c = 0; c < cols; ++c)
            for (Index r = 0; r < rows; ++r) m(r, c) = normal(rng);
        return m;
    };

    const Index dim = spec.ambient_dim;
    const Index sub = spec.subspace_dim;
    const Index per = spec.points_per_subspace;
    SyntheticData out;
    out.data.values.resize(dim, per * spec.num_subspaces);
    out.labels.reserve(static_cast<std::size_t>(per * spec.num_subspaces));

    for (int l = 0; l < spec.num_subspaces; ++l) {
        Eigen::HouseholderQR<Matrix> qr(gaussian(dim, sub));
        Matrix basis = qr.householderQ() * Matrix::Identity(dim, sub);

        // Uniform in the ball of radius affine_offset_scale.
        Vector offset = Vector::Zero(dim);
        if (spec.affine_offset_scale > 0.0) {
            Vector dir = gaussian(dim, 1);
            const double radius =
                spec.affine_offset_scale * std::pow(uniform(rng), 1.0 / static_cast<double>(dim));
            offset = dir.normalized() * radius;
        }

        const Matrix coeffs = gaussian(sub, per);
        Matrix block = (basis * coeffs).colwise() + offset;
        if (spec.noise_std > 0.0) block += spec.noise_std * gaussian(dim, per);

        out.data.values.middleCols(l * per, per) = block;
        out.labels.insert(out.labels.end(), static_cast<std::size_t>(per), l + 1);
        out.bases.push_back(std::move(basis));
        out.offsets.push_back(std::move(offset));
    }
    return out;
}

nlohmann::json to_json(const ResultsDocument& doc) {
    using nlohmann::json;
    json j;
    j["assignment"] = doc.assignment;
    j["ce"] = doc.ce ? json(*doc.ce) : json(nullptr);
    j["nmi"] = doc.nmi ? json(*doc.nmi) : json(nullptr);
    j["iterations"] = doc.iterations;
    j["converged"] = doc.converged;
    j["final_residuals"] = {
        {"gamma_change", doc.final_residuals[0]},
        {"gamma_plus_gap", doc.final_residuals[1]},
        {"u_gap", doc.final_residuals[2]},
        {"affine_gap", doc.final_residuals[3]},
    };
    j["objective"] = doc.objective;
    j["wall_time_s"] = doc.wall_time_s;
    j["config_echo"] = doc.config_echo;
    j["diagnostics"] = doc.diagnostics;
    if (doc.code != nullptr) {
        const auto& g = doc.code->values;
        json triplets = json::array();
        for (Index c = 0; c < g.cols(); ++c)
            for (Index r = 0; r < g.rows(); ++r)
                if (g(r, c) != 0.0) triplets.push_back({r, c, g(r, c)});
        j["gamma"] = {{"n", g.cols()}, {"index_base", 0}, {"triplets", std::move(triplets)}};
    }
    return j;
}

void save_results(const ResultsDocument& doc, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << to_json(doc).dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace nlssc
