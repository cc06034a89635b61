#include "simeval/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>

#include <json.hpp>

#include <httplib.h>

#include "util/csv.hpp"
#include "util/digest.hpp"
#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/rng.hpp"
#include "util/strings.hpp"

namespace codesat::simeval {

namespace {

class FixtureProvider final : public EmbeddingProvider {
 public:
  explicit FixtureProvider(size_t dimension) : dimension_(dimension) {}

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    if (texts.empty()) throw InputError("embed: no texts");
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      util::Rng rng(util::fnv1a64(t));
      EmbeddingVector v(dimension_);
      double norm2 = 0.0;
      for (auto& x : v) {
        x = rng.uniform01() * 2.0 - 1.0;
        norm2 += x * x;
      }
      double norm = std::sqrt(norm2);
      for (auto& x : v) x /= norm;
      out.push_back(std::move(v));
    }
    return out;
  }

  std::string name() const override { return "fixture"; }

 private:
  size_t dimension_;
};

class FileProvider final : public EmbeddingProvider {
 public:
  explicit FileProvider(const std::string& path) {
    auto j = util::load_json_file(path);
    if (!j.is_object()) throw ConfigError("vectors file must be a JSON object: " + path);
    for (const auto& [text, vec] : j.items()) {
      EmbeddingVector v;
      for (const auto& x : vec) v.push_back(x.get<double>());
      vectors_[text] = std::move(v);
    }
    if (vectors_.empty()) throw ConfigError("vectors file is empty: " + path);
  }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    if (texts.empty()) throw InputError("embed: no texts");
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      auto it = vectors_.find(t);
      if (it == vectors_.end()) {
        throw InputError("vectors file has no embedding for text: " + t.substr(0, 120));
      }
      out.push_back(it->second);
    }
    check_dimensions(out);
    return out;
  }

  std::string name() const override { return "file"; }

 private:
  static void check_dimensions(const std::vector<EmbeddingVector>& vs) {
    for (const auto& v : vs) {
      if (v.size() != vs.front().size()) {
        throw InputError("embedding dimensions differ within a batch");
      }
    }
  }

  std::map<std::string, EmbeddingVector> vectors_;
};

class HttpProvider final : public EmbeddingProvider {
 public:
  explicit HttpProvider(HttpEmbeddingOptions options) : options_(std::move(options)) {}

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    if (texts.empty()) throw InputError("embed: no texts");
    httplib::Client client(options_.base_url);
    client.set_read_timeout(options_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!options_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + options_.api_key);
    }
    nlohmann::json payload = {{"model", options_.model_id}, {"input", texts}};
    auto res = client.Post(options_.endpoint_path, headers, payload.dump(), "application/json");
    if (!res) throw TransportError("embeddings request failed: " + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403) {
      throw AuthError("embeddings endpoint rejected credentials (HTTP " +
                      std::to_string(res->status) + ")");
    }
    if (res->status != 200) {
      throw ProviderContentError("embeddings endpoint returned HTTP " +
                                 std::to_string(res->status));
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProviderContentError(std::string("unparsable embeddings response: ") + e.what());
    }
    if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != texts.size()) {
      throw ProviderContentError("embeddings response shape mismatch");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    size_t dim = 0;
    for (const auto& item : j["data"]) {
      EmbeddingVector v;
      for (const auto& x : item.at("embedding")) v.push_back(x.get<double>());
      if (dim == 0) dim = v.size();
      if (v.size() != dim) throw ProviderContentError("embedding dimensions differ within batch");
      out.push_back(std::move(v));
    }
    return out;
  }

  std::string name() const override { return "http"; }

 private:
  HttpEmbeddingOptions options_;
};

}  // namespace

std::unique_ptr<EmbeddingProvider> make_fixture_provider(size_t dimension) {
  return std::make_unique<FixtureProvider>(dimension);
}

std::unique_ptr<EmbeddingProvider> make_file_provider(const std::string& path) {
  return std::make_unique<FileProvider>(path);
}

std::unique_ptr<EmbeddingProvider> make_http_provider(HttpEmbeddingOptions options) {
  return std::make_unique<HttpProvider>(std::move(options));
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.size() != v.size() || u.empty()) {
    throw InputError("cosine: dimension mismatch or empty vectors");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw InputError("cosine: zero-norm vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

SimilarityMatrix cosine_matrix(const std::vector<std::string>& row_labels,
                               const std::vector<EmbeddingVector>& row_vectors,
                               const std::vector<std::string>& col_labels,
                               const std::vector<EmbeddingVector>& col_vectors) {
  if (row_labels.size() != row_vectors.size() || col_labels.size() != col_vectors.size()) {
    throw InputError("cosine_matrix: label/vector count mismatch");
  }
  if (row_labels.empty() || col_labels.empty()) {
    throw InputError("cosine_matrix: empty side");
  }
  SimilarityMatrix m;
  m.row_labels = row_labels;
  m.col_labels = col_labels;
  m.values.assign(row_labels.size(), std::vector<double>(col_labels.size(), 0.0));
  for (size_t i = 0; i < row_vectors.size(); ++i) {
    for (size_t j = 0; j < col_vectors.size(); ++j) {
      m.values[i][j] = cosine(row_vectors[i], col_vectors[j]);
    }
  }
  return m;
}

namespace {

// O(n^3) shortest-augmenting-path assignment on a square cost matrix;
// returns, for each row, the assigned column.
std::vector<int> solve_square_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      int i0 = p[static_cast<size_t>(j0)], j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        double cur = cost[static_cast<size_t>(i0) - 1][static_cast<size_t>(j) - 1] -
                     u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j) {
    if (p[static_cast<size_t>(j)] != 0) {
      row_to_col[static_cast<size_t>(p[static_cast<size_t>(j)]) - 1] = j - 1;
    }
  }
  return row_to_col;
}

}  // namespace

DiagonalOrdering optimal_diagonal_ordering(const SimilarityMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw InputError("assignment: empty matrix");
  const size_t n = std::max(m.rows(), m.cols());
  constexpr double kPadSimilarity = -1.0;  // sentinel; padded matches get discarded

  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 1.0 - kPadSimilarity));
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      cost[i][j] = 1.0 - m.values[i][j];  // maximize similarity as min-cost
    }
  }
  std::vector<int> raw = solve_square_assignment(cost);

  Assignment assignment;
  assignment.row_to_col.assign(m.rows(), -1);
  for (size_t i = 0; i < m.rows(); ++i) {
    int j = raw[i];
    if (j >= 0 && static_cast<size_t>(j) < m.cols()) {
      assignment.row_to_col[i] = j;
      assignment.score += m.values[i][static_cast<size_t>(j)];
    }
  }

  DiagonalOrdering out;
  out.annotated = m;
  out.annotated.ordering = assignment;

  // Matched pairs first (by row order), then leftovers, so pair k lands at
  // (k, k) of the reordered matrix.
  std::vector<size_t> row_order, col_order;
  std::vector<char> col_taken(m.cols(), 0);
  for (size_t i = 0; i < m.rows(); ++i) {
    if (assignment.row_to_col[i] >= 0) {
      row_order.push_back(i);
      col_order.push_back(static_cast<size_t>(assignment.row_to_col[i]));
      col_taken[static_cast<size_t>(assignment.row_to_col[i])] = 1;
    }
  }
  for (size_t i = 0; i < m.rows(); ++i) {
    if (assignment.row_to_col[i] < 0) row_order.push_back(i);
  }
  for (size_t j = 0; j < m.cols(); ++j) {
    if (!col_taken[j]) col_order.push_back(j);
  }

  SimilarityMatrix& r = out.reordered;
  for (size_t i : row_order) r.row_labels.push_back(m.row_labels[i]);
  for (size_t j : col_order) r.col_labels.push_back(m.col_labels[j]);
  r.values.assign(m.rows(), std::vector<double>(m.cols(), 0.0));
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      r.values[i][j] = m.values[row_order[i]][col_order[j]];
    }
  }
  r.ordering = assignment;
  return out;
}

namespace {
std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void export_matrix_csv(const SimilarityMatrix& m, const std::string& path) {
  util::CsvRow header;
  header.push_back("");
  for (const auto& c : m.col_labels) header.push_back(c);
  std::vector<util::CsvRow> rows;
  rows.reserve(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    util::CsvRow row;
    row.push_back(m.row_labels[i]);
    for (double v : m.values[i]) row.push_back(full_precision(v));
    rows.push_back(std::move(row));
  }
  util::csv_write(path, header, rows);
}

SimilarityMatrix import_matrix_csv(const std::string& path) {
  auto rows = util::csv_parse(util::read_file(path));
  if (rows.size() < 2 || rows.front().size() < 2) {
    throw InputError("matrix csv too small: " + path);
  }
  SimilarityMatrix m;
  for (size_t j = 1; j < rows.front().size(); ++j) m.col_labels.push_back(rows.front()[j]);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != m.col_labels.size() + 1) {
      throw InputError("matrix csv row width mismatch: " + path);
    }
    m.row_labels.push_back(row[0]);
    std::vector<double> vals;
    for (size_t j = 1; j < row.size(); ++j) vals.push_back(std::stod(row[j]));
    m.values.push_back(std::move(vals));
  }
  return m;
}

void export_matrix_svg(const SimilarityMatrix& m, const std::string& path,
                       double highlight_threshold) {
  constexpr int kCell = 14;
  constexpr int kMargin = 4;
  const int width = kMargin * 2 + kCell * static_cast<int>(m.cols());
  const int height = kMargin * 2 + kCell * static_cast<int>(m.rows());

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[256];
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      double v = m.values[i][j];
      double t = std::clamp(v, 0.0, 1.0);  // red intensity; negatives render white
      int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      int x = kMargin + static_cast<int>(j) * kCell;
      int y = kMargin + static_cast<int>(i) * kCell;
      std::snprintf(buf, sizeof(buf),
                    "<rect class=\"cell\" x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                    "fill=\"rgb(255,%d,%d)\"%s><title>%zu,%zu: %.4f</title></rect>\n",
                    x, y, kCell, kCell, g, g,
                    v >= highlight_threshold ? " stroke=\"black\" stroke-width=\"1\"" : "", i, j,
                    v);
      svg += buf;
    }
  }
  svg += "</svg>\n";
  util::write_file(path, svg);
}

}  // namespace codesat::simeval
