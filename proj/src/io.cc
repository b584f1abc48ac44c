#include <zom/io.hh>

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

using std::string;
using std::uint32_t;
using std::vector;

namespace zom
{
    auto read_pattern(std::istream & in) -> Pattern
    {
        string line;
        if (! std::getline(in, line))
            throw ParseError("pattern: missing header line");
        std::istringstream header(line);
        long long rows = 0, cols = 0;
        if (! (header >> rows >> cols) || rows <= 0 || cols <= 0)
            throw ParseError("pattern: header must be 'rows cols' with positive values");

        vector<Cell> ones;
        for (long long r = 1 ; r <= rows ; ++r) {
            if (! std::getline(in, line))
                throw ParseError("pattern: expected " + std::to_string(rows) + " rows, got " + std::to_string(r - 1));
            if (! line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.size() != static_cast<std::size_t>(cols))
                throw ParseError("pattern: row " + std::to_string(r) + " has length " + std::to_string(line.size())
                        + ", expected " + std::to_string(cols));
            for (std::size_t c = 0 ; c < line.size() ; ++c) {
                if (line[c] == 'X')
                    ones.push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(c + 1)});
                else if (line[c] != '.')
                    throw ParseError("pattern: unexpected character '" + string(1, line[c]) + "'");
            }
        }
        return Pattern(static_cast<uint32_t>(rows), static_cast<uint32_t>(cols), std::move(ones));
    }

    auto format_pattern(const Pattern & pattern) -> string
    {
        string result = std::to_string(pattern.rows()) + " " + std::to_string(pattern.cols()) + "\n";
        vector<string> grid(pattern.rows(), string(pattern.cols(), '.'));
        for (auto & c : pattern.ones())
            grid[c.row - 1][c.col - 1] = 'X';
        for (auto & row : grid)
            result += row + "\n";
        return result;
    }

    auto write_pattern(std::ostream & out, const Pattern & pattern) -> void
    {
        out << format_pattern(pattern);
    }

    auto read_sparse_matrix(std::istream & in) -> SparseMatrix
    {
        long long n = 0, n2 = 0, nnz = 0;
        if (! (in >> n >> n2 >> nnz))
            throw ParseError("matrix: header must be 'n n nnz'");
        if (n <= 0 || n != n2 || nnz < 0 || n > std::numeric_limits<uint32_t>::max())
            throw ParseError("matrix: header must describe a non-empty square matrix");

        vector<Cell> entries;
        entries.reserve(static_cast<std::size_t>(nnz));
        for (long long i = 0 ; i < nnz ; ++i) {
            long long r = 0, c = 0;
            if (! (in >> r >> c))
                throw ParseError("matrix: expected " + std::to_string(nnz) + " entries, got " + std::to_string(i));
            if (r < 1 || r > n || c < 1 || c > n)
                throw ParseError("matrix: entry out of range on line " + std::to_string(i + 2));
            Cell cell{static_cast<uint32_t>(r), static_cast<uint32_t>(c)};
            if (! entries.empty() && ! (entries.back() < cell))
                throw ParseError("matrix: entries must be strictly sorted row-major");
            entries.push_back(cell);
        }
        return SparseMatrix(static_cast<uint32_t>(n), std::move(entries));
    }

    auto write_sparse_matrix(std::ostream & out, const SparseMatrix & matrix) -> void
    {
        string buffer;
        buffer.reserve(32 + matrix.weight() * 16);
        buffer += std::to_string(matrix.n()) + " " + std::to_string(matrix.n()) + " " + std::to_string(matrix.weight()) + "\n";
        for (auto & c : matrix.entries()) {
            buffer += std::to_string(c.row);
            buffer += ' ';
            buffer += std::to_string(c.col);
            buffer += '\n';
        }
        out << buffer;
    }

    namespace
    {
        auto open_in(const string & path) -> std::ifstream
        {
            std::ifstream in(path);
            if (! in)
                throw ParseError("cannot open '" + path + "' for reading");
            return in;
        }

        auto open_out(const string & path) -> std::ofstream
        {
            std::ofstream out(path, std::ios::binary);
            if (! out)
                throw ParseError("cannot open '" + path + "' for writing");
            return out;
        }
    }

    auto load_pattern(const string & path) -> Pattern
    {
        auto in = open_in(path);
        return read_pattern(in);
    }

    auto save_pattern(const string & path, const Pattern & pattern) -> void
    {
        auto out = open_out(path);
        write_pattern(out, pattern);
    }

    auto load_sparse_matrix(const string & path) -> SparseMatrix
    {
        auto in = open_in(path);
        return read_sparse_matrix(in);
    }

    auto save_sparse_matrix(const string & path, const SparseMatrix & matrix) -> void
    {
        auto out = open_out(path);
        write_sparse_matrix(out, matrix);
    }
}
