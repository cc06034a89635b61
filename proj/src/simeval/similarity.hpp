#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace codesat::simeval {

using EmbeddingVector = std::vector<double>;

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // One vector per text, order-preserving, all with the same dimension.
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
  virtual std::string name() const = 0;
};

// Deterministic test/demo provider: unit vectors derived from a seeded hash
// of each text. Identical texts embed identically.
std::unique_ptr<EmbeddingProvider> make_fixture_provider(size_t dimension = 64);

// Precomputed vectors: JSON object mapping text -> [floats]. Missing texts
// are an input error.
std::unique_ptr<EmbeddingProvider> make_file_provider(const std::string& vectors_json_path);

struct HttpEmbeddingOptions {
  std::string base_url;
  std::string endpoint_path = "/v1/embeddings";
  std::string model_id;
  std::string api_key;
  int timeout_seconds = 120;
};

// Remote embeddings endpoint ({model, input} -> data[i].embedding).
std::unique_ptr<EmbeddingProvider> make_http_provider(HttpEmbeddingOptions options);

double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

struct Assignment {
  // row_to_col[i] is the matched column for row i, or -1 when |A| > |B|
  // leaves the row unmatched.
  std::vector<int> row_to_col;
  double score = 0.0;  // sum of matched similarities
};

struct SimilarityMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> values;  // |rows| x |cols|, each in [-1, 1]
  std::optional<Assignment> ordering;

  size_t rows() const { return row_labels.size(); }
  size_t cols() const { return col_labels.size(); }
};

SimilarityMatrix cosine_matrix(const std::vector<std::string>& row_labels,
                               const std::vector<EmbeddingVector>& row_vectors,
                               const std::vector<std::string>& col_labels,
                               const std::vector<EmbeddingVector>& col_vectors);

// Solves the linear assignment problem maximizing total matched similarity
// (Kuhn-Munkres on cost 1 - value; rectangular inputs padded with sentinel
// -1 similarity, padded matches discarded). Stores the assignment on the
// returned matrix and also returns the matrix reordered so matched pairs sit
// on the leading diagonal.
struct DiagonalOrdering {
  SimilarityMatrix annotated;  // input matrix + ordering
  SimilarityMatrix reordered;  // rows/cols permuted, matches on the diagonal
};
DiagonalOrdering optimal_diagonal_ordering(const SimilarityMatrix& m);

// CSV: header row of column labels, one row per matrix row, full precision.
void export_matrix_csv(const SimilarityMatrix& m, const std::string& path);
SimilarityMatrix import_matrix_csv(const std::string& path);

// Heatmap with a red intensity scale; cells at or above the highlight
// threshold get an outline.
void export_matrix_svg(const SimilarityMatrix& m, const std::string& path,
                       double highlight_threshold = 0.75);

}  // namespace codesat::simeval
