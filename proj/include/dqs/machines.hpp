#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dqs/rational.hpp"

namespace dqs {

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// I1/O1 act on the top of the deque, I2/O2 on the bottom.
enum class Op : uint8_t { I1, I2, O1, O2 };

using OpSeq = std::vector<Op>;

inline bool is_input(Op o) { return o == Op::I1 || o == Op::I2; }

// Compact codec over {a,b,A,B} = {I1,I2,O1,O2}.
OpSeq parse_word(const std::string& text);
std::string format_word(const OpSeq& w);

// Equal numbers of inputs and outputs, every prefix input-majority.
bool is_valid_op_sequence(const OpSeq& w);

// Runs the deque procedure on inputs 1..n; throws
// std::invalid_argument("invalid operation sequence") on a bad word.
std::vector<int> apply_deque(const OpSeq& w);

// Balanced and prefix-dominant separately in each subscript.
bool is_tsip_word(const OpSeq& w);

// Contains no consecutive I1 O2 or I2 O1.
bool outputs_eagerly(const OpSeq& w);

// Every I2/O2 occurs with at least two items already held.
bool is_top_happy(const OpSeq& w);

// Direct O(len^3) scan of every sub-word for the standard clause.
bool is_canonical_naive(const OpSeq& w);
// Recursive check through the unique decomposition; must agree with the
// naive scan on every valid sequence.
bool is_canonical_decomposed(const OpSeq& w);

struct Decomposition {
    OpSeq skeleton;                  // x_1 ... x_2m, unbreakable
    std::vector<OpSeq> insertions;   // w_1 ... w_{2m-1}, tsip words
    OpSeq tail;                      // v
};

// Unique greedy decomposition of a nonempty valid sequence: split at the
// first point the deque empties, then repeatedly take the longest tsip
// sub-word after each skeleton letter.
Decomposition decompose(const OpSeq& w);
OpSeq reassemble(const Decomposition& d);

enum class Machine { deque, tsip };

// Number of distinct permutations of length n the machine can produce.
// Per-permutation reachability search with memoized machine states; the
// search never prunes on canonicality. n <= 10.
long count_sortable(int n, Machine machine);

bool deque_achievable(const std::vector<int>& perm);
bool tsip_achievable(const std::vector<int>& perm);

// Number of canonical operation sequences of length 2n (n <= 9).
long count_canonical(int n);

// Number of standard tsip words of length 2n that output eagerly (n <= 9).
long count_eager_standard_tsip(int n);

// Coefficient table of M(a,u,x): top-happy unbreakable sequences by
// half-length m, number of I1O2/I2O1 factors q, and number of time points
// with exactly one element held r.
struct MTable {
    int half_len_max = 0;
    // table[m] maps (q, r) -> count; table[0] is empty by convention.
    std::vector<std::map<std::pair<int, int>, long>> table;
};

MTable enumerate_M(int half_len_max);  // half_len_max <= 7

// Enumeration helpers for the property tests. The callback sees each valid
// operation sequence of length 2n (optionally only those outputting eagerly).
void for_each_valid_sequence(int n, bool eager_only, const std::function<void(const OpSeq&)>& fn);
void for_each_canonical(int n, const std::function<void(const OpSeq&)>& fn);

}  // namespace dqs
