#pragma once

#include <zom/core.hh>

#include <iosfwd>
#include <string>

namespace zom
{
    // Pattern text: "rows cols" then one line per row of '.' (0) and 'X' (1).
    // Sparse matrix text: "n n nnz" then nnz lines "r c", 1-based and sorted.
    // Writers emit exactly these bytes with '\n' line ends.

    auto read_pattern(std::istream & in) -> Pattern;
    auto write_pattern(std::ostream & out, const Pattern & pattern) -> void;
    auto format_pattern(const Pattern & pattern) -> std::string;

    auto read_sparse_matrix(std::istream & in) -> SparseMatrix;
    auto write_sparse_matrix(std::ostream & out, const SparseMatrix & matrix) -> void;

    auto load_pattern(const std::string & path) -> Pattern;
    auto save_pattern(const std::string & path, const Pattern & pattern) -> void;
    auto load_sparse_matrix(const std::string & path) -> SparseMatrix;
    auto save_sparse_matrix(const std::string & path, const SparseMatrix & matrix) -> void;
}
