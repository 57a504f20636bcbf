#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gdist/graph.hpp"

namespace gdist {

struct DistanceMatrix;

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// n rows x m columns, comma separated, no header.
std::string format_matrix_csv(const Matrix& m);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_csv(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);

/// Hash of the canonical edge-list serialisation.
std::string graph_sha256(const CostedGraph& g);

/// Writes `<output>.meta.json` with keys method, params, n, graph_sha256.
void write_distance_metadata(const std::filesystem::path& matrix_path, const DistanceMatrix& d, const CostedGraph& g);

/// `node<TAB>label` lines; nodes absent from the file are unlabelled (-1).
std::vector<int> read_labels_tsv(const std::filesystem::path& path, int n);
std::string format_labels_tsv(const std::vector<int>& labels);
void write_labels_tsv(const std::filesystem::path& path, const std::vector<int>& labels);

}  // namespace gdist
