#include "lpdec/code.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lpdec/rng.hpp"

namespace lpdec {

int ParityCheckCode::max_check_degree() const {
    int d = 0;
    for (const auto& r : rows) d = std::max(d, static_cast<int>(r.size()));
    return d;
}

ParityCheckCode ParityCheckCode::from_rows(int n, std::vector<std::vector<int>> rows) {
    if (n <= 0) throw std::invalid_argument("variable count must be positive");
    ParityCheckCode code;
    code.n = n;
    code.m = static_cast<int>(rows.size());
    code.rows = std::move(rows);
    code.cols.assign(n, {});
    for (int j = 0; j < code.m; ++j) {
        const auto& row = code.rows[j];
        if (row.size() < 2)
            throw std::invalid_argument("check " + std::to_string(j) + " has degree " +
                                        std::to_string(row.size()) + " (minimum is 2)");
        for (std::size_t t = 0; t < row.size(); ++t) {
            int i = row[t];
            if (i < 0 || i >= n)
                throw std::invalid_argument("check " + std::to_string(j) + ": variable index " +
                                            std::to_string(i) + " out of range");
            if (t > 0 && row[t - 1] >= i)
                throw std::invalid_argument("check " + std::to_string(j) +
                                            ": support not strictly increasing");
            code.cols[i].push_back(j);
        }
    }
    return code;
}

bool ParityCheckCode::is_codeword(const BitVector& word) const {
    if (static_cast<int>(word.size()) != n) throw std::invalid_argument("word length mismatch");
    for (const auto& row : rows) {
        int parity = 0;
        for (int i : row) parity ^= word[i] & 1;
        if (parity) return false;
    }
    return true;
}

namespace {

// splits text into lines of integer tokens, tracking 1-based line numbers
struct TokenLines {
    std::vector<std::pair<int, std::vector<long>>> lines;  // (line number, values)

    explicit TokenLines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            std::vector<long> values;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                try {
                    std::size_t used = 0;
                    long v = std::stol(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    values.push_back(v);
                } catch (const std::exception&) {
                    throw AlistParseError(number, "not an integer: '" + tok + "'");
                }
            }
            if (!values.empty()) lines.emplace_back(number, std::move(values));
        }
    }
};

}  // namespace

ParityCheckCode parse_alist(const std::string& text) {
    TokenLines tl(text);
    std::size_t at = 0;
    auto next_line = [&](const char* what) -> const std::pair<int, std::vector<long>>& {
        if (at >= tl.lines.size()) {
            int last = tl.lines.empty() ? 0 : tl.lines.back().first;
            throw AlistParseError(last + 1, std::string("unexpected end of input, expected ") + what);
        }
        return tl.lines[at++];
    };

    const auto& header = next_line("header 'n m'");
    if (header.second.size() != 2 || header.second[0] <= 0 || header.second[1] <= 0)
        throw AlistParseError(header.first, "header must be two positive integers 'n m'");
    const int n = static_cast<int>(header.second[0]);
    const int m = static_cast<int>(header.second[1]);

    const auto& maxdeg = next_line("'max_dv max_dc'");
    if (maxdeg.second.size() != 2 || maxdeg.second[0] < 0 || maxdeg.second[1] < 0)
        throw AlistParseError(maxdeg.first, "expected 'max_dv max_dc'");

    auto read_degrees = [&](int count, const char* what) {
        std::vector<int> deg;
        deg.reserve(count);
        while (static_cast<int>(deg.size()) < count) {
            const auto& l = next_line(what);
            for (long v : l.second) {
                if (v < 0) throw AlistParseError(l.first, "negative degree");
                deg.push_back(static_cast<int>(v));
                if (static_cast<int>(deg.size()) > count)
                    throw AlistParseError(l.first, std::string("too many entries in ") + what);
            }
        }
        return deg;
    };
    const std::vector<int> dv = read_degrees(n, "variable degree list");
    const std::vector<int> dc = read_degrees(m, "check degree list");

    // one line per node; zero entries are padding and ignored
    auto read_adjacency = [&](int count, const std::vector<int>& expect_deg, int index_bound,
                              const char* what) {
        std::vector<std::vector<int>> adj(count);
        for (int k = 0; k < count; ++k) {
            const auto& l = next_line(what);
            for (long v : l.second) {
                if (v == 0) continue;
                if (v < 1 || v > index_bound)
                    throw AlistParseError(l.first, "index " + std::to_string(v) + " out of range [1, " +
                                                       std::to_string(index_bound) + "]");
                adj[k].push_back(static_cast<int>(v - 1));
            }
            if (static_cast<int>(adj[k].size()) != expect_deg[k])
                throw AlistParseError(l.first, std::string(what) + " " + std::to_string(k + 1) + " has " +
                                                   std::to_string(adj[k].size()) + " entries, degree list says " +
                                                   std::to_string(expect_deg[k]));
            std::sort(adj[k].begin(), adj[k].end());
            for (std::size_t t = 1; t < adj[k].size(); ++t)
                if (adj[k][t] == adj[k][t - 1])
                    throw AlistParseError(l.first, std::string("duplicate index in ") + what + " " +
                                                       std::to_string(k + 1));
        }
        return adj;
    };
    const int header_line = header.first;
    std::vector<std::vector<int>> col_adj = read_adjacency(n, dv, m, "variable list");
    std::vector<std::vector<int>> row_adj = read_adjacency(m, dc, n, "check list");
    if (at != tl.lines.size())
        throw AlistParseError(tl.lines[at].first, "trailing content after adjacency lists");

    ParityCheckCode code;
    try {
        code = ParityCheckCode::from_rows(n, std::move(row_adj));
    } catch (const std::invalid_argument& e) {
        throw AlistParseError(header_line, e.what());
    }
    // the redundant per-variable lists must be the exact transpose
    if (code.cols != col_adj)
        throw AlistParseError(header_line, "row and column adjacency lists are inconsistent");
    return code;
}

std::string emit_alist(const ParityCheckCode& code) {
    int max_dv = 0, max_dc = 0;
    for (const auto& c : code.cols) max_dv = std::max(max_dv, static_cast<int>(c.size()));
    for (const auto& r : code.rows) max_dc = std::max(max_dc, static_cast<int>(r.size()));

    std::ostringstream out;
    out << code.n << ' ' << code.m << '\n';
    out << max_dv << ' ' << max_dc << '\n';
    for (int i = 0; i < code.n; ++i) out << code.cols[i].size() << (i + 1 < code.n ? ' ' : '\n');
    for (int j = 0; j < code.m; ++j) out << code.rows[j].size() << (j + 1 < code.m ? ' ' : '\n');
    auto emit_lists = [&](const std::vector<std::vector<int>>& adj, int width) {
        for (const auto& entries : adj) {
            for (int t = 0; t < width; ++t) {
                if (t) out << ' ';
                out << (t < static_cast<int>(entries.size()) ? entries[t] + 1 : 0);
            }
            out << '\n';
        }
    };
    emit_lists(code.cols, max_dv);
    emit_lists(code.rows, max_dc);
    return out.str();
}

ParityCheckCode random_regular_ldpc(int n, int dv, int dc, std::uint64_t seed) {
    if (dv < 2 || dc < 2) throw std::invalid_argument("degrees must be at least 2");
    if (n <= 0) throw std::invalid_argument("n must be positive");
    const long long edges = static_cast<long long>(n) * dv;
    if (edges % dc != 0) throw std::invalid_argument("n*dv must be divisible by dc");
    const int m = static_cast<int>(edges / dc);
    if (dc > n) throw std::invalid_argument("dc exceeds n, parallel edges unavoidable");

    Rng rng(seed);
    // socket e belongs to variable e/dv; pairing[e]/dc is the matched check
    std::vector<int> pairing(edges);
    for (long long e = 0; e < edges; ++e) pairing[e] = static_cast<int>(e);
    rng.shuffle(pairing);

    auto var_of = [&](long long e) { return static_cast<int>(e / dv); };
    auto check_of = [&](long long e) { return pairing[e] / dc; };

    // remove parallel edges by swapping check sockets between a conflicting
    // edge and a random other edge
    const long long budget = 200 * edges;
    long long swaps = 0;
    bool clean = false;
    std::vector<std::vector<int>> seen(n);
    while (!clean) {
        clean = true;
        for (auto& s : seen) s.clear();
        for (long long e = 0; e < edges && clean; ++e) {
            auto& s = seen[var_of(e)];
            if (std::find(s.begin(), s.end(), check_of(e)) != s.end()) clean = false;
            else s.push_back(check_of(e));
        }
        if (clean) break;
        // resolve every conflict found in one pass
        for (auto& s : seen) s.clear();
        for (long long e = 0; e < edges; ++e) {
            auto& s = seen[var_of(e)];
            while (std::find(s.begin(), s.end(), check_of(e)) != s.end()) {
                if (++swaps > budget)
                    throw std::runtime_error("random_regular_ldpc: could not remove parallel edges");
                long long f = rng.next_below(static_cast<std::uint64_t>(edges));
                std::swap(pairing[e], pairing[f]);
            }
            s.push_back(check_of(e));
        }
    }

    std::vector<std::vector<int>> rows(m);
    for (long long e = 0; e < edges; ++e) rows[check_of(e)].push_back(var_of(e));
    for (auto& row : rows) std::sort(row.begin(), row.end());
    return ParityCheckCode::from_rows(n, std::move(rows));
}

CheckRow combine_rows(const ParityCheckCode& code, const std::vector<int>& checks) {
    if (checks.empty()) throw std::invalid_argument("combine_rows: empty check set");
    std::vector<std::uint8_t> parity(code.n, 0);
    for (int j : checks) {
        if (j < 0 || j >= code.m)
            throw std::invalid_argument("combine_rows: check index " + std::to_string(j) + " out of range");
        for (int i : code.rows[j]) parity[i] ^= 1;
    }
    CheckRow result;
    for (int i = 0; i < code.n; ++i)
        if (parity[i]) result.support.push_back(i);
    return result;
}

std::vector<BitVector> enumerate_codewords(const ParityCheckCode& code) {
    if (code.n > 28) throw std::invalid_argument("enumerate_codewords: n > 28");
    const int n = code.n;

    // GF(2) elimination on bitmask rows to find the nullspace basis
    std::vector<std::uint32_t> mat;
    mat.reserve(code.m);
    for (const auto& row : code.rows) {
        std::uint32_t bits = 0;
        for (int i : row) bits |= (1u << i);
        mat.push_back(bits);
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < n && rank < mat.size(); ++col) {
        std::size_t sel = rank;
        while (sel < mat.size() && !(mat[sel] >> col & 1)) ++sel;
        if (sel == mat.size()) continue;
        std::swap(mat[rank], mat[sel]);
        for (std::size_t r = 0; r < mat.size(); ++r)
            if (r != rank && (mat[r] >> col & 1)) mat[r] ^= mat[rank];
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<std::uint8_t> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    // one basis vector per free column: free bit set, pivot bits solved
    std::vector<std::uint32_t> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::uint32_t v = 1u << col;
        for (std::size_t r = 0; r < rank; ++r)
            if (mat[r] >> col & 1) v |= (1u << pivot_col[r]);
        basis.push_back(v);
    }

    const std::size_t dim = basis.size();
    std::vector<BitVector> words;
    words.reserve(std::size_t{1} << dim);
    std::uint32_t current = 0;
    for (std::uint64_t counter = 0;; ++counter) {
        BitVector w(n);
        for (int i = 0; i < n; ++i) w[i] = (current >> i) & 1;
        words.push_back(std::move(w));
        if (counter + 1 >= (std::uint64_t{1} << dim)) break;
        // Gray-code step: flip the basis vector named by the lowest set bit
        std::uint64_t next = counter + 1;
        int bit = 0;
        while (!((next >> bit) & 1)) ++bit;
        current ^= basis[bit];
    }
    return words;
}

}  // namespace lpdec
