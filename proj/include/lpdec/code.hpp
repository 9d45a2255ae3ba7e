#ifndef LPDEC_CODE_HPP
#define LPDEC_CODE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpdec {

using BitVector = std::vector<std::uint8_t>;

// Sparse binary parity-check matrix with Tanner-graph adjacency.
// rows[j] holds the sorted variable indices of check j (the support of the
// check, i.e. the neighborhood N(j)); cols[i] holds the sorted check indices
// incident to variable i and is always the exact transpose of rows.
// Immutable after construction; safe to share across threads.
struct ParityCheckCode {
    int n = 0;  // variable count
    int m = 0;  // check count
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> cols;

    int check_degree(int j) const { return static_cast<int>(rows[j].size()); }
    int variable_degree(int i) const { return static_cast<int>(cols[i].size()); }
    int max_check_degree() const;

    // builds column adjacency from rows and validates all invariants
    static ParityCheckCode from_rows(int n, std::vector<std::vector<int>> rows);

    // true iff H*word == 0 over GF(2)
    bool is_codeword(const BitVector& word) const;
};

// A single parity check, possibly a redundant one formed by row combination.
// May be empty (combining identical rows); an empty row generates no
// constraints.
struct CheckRow {
    std::vector<int> support;  // sorted variable indices
};

class AlistParseError : public std::runtime_error {
  public:
    AlistParseError(int line, const std::string& what)
        : std::runtime_error("alist line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// alist text format: header "n m", then "max_dv max_dc", per-variable and
// per-check degree lists, then one line per variable with its 1-based check
// indices and one line per check with its 1-based variable indices. Zero
// entries (padding) are ignored. Throws AlistParseError with a line number on
// malformed input.
ParityCheckCode parse_alist(const std::string& text);
std::string emit_alist(const ParityCheckCode& code);

// Random (dv,dc)-regular code via configuration-model socket pairing with
// local re-pairing to remove parallel edges. Deterministic given seed.
// Requires n*dv divisible by dc and dv, dc >= 2.
ParityCheckCode random_regular_ldpc(int n, int dv, int dc, std::uint64_t seed);

// GF(2) sum of the selected rows: support is the symmetric difference of the
// rows' supports. checks must be nonempty with valid indices.
CheckRow combine_rows(const ParityCheckCode& code, const std::vector<int>& checks);

// All 2^(n-rank) vectors x with Hx = 0, enumerated from a nullspace basis
// found by GF(2) elimination. Guarded to n <= 28.
std::vector<BitVector> enumerate_codewords(const ParityCheckCode& code);

}  // namespace lpdec

#endif
