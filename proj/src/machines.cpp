#include "dqs/machines.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace dqs {

OpSeq parse_word(const std::string& text) {
    OpSeq w;
    w.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'a': w.push_back(Op::I1); break;
            case 'b': w.push_back(Op::I2); break;
            case 'A': w.push_back(Op::O1); break;
            case 'B': w.push_back(Op::O2); break;
            default: throw std::invalid_argument(std::string("bad operation letter: ") + c);
        }
    }
    return w;
}

std::string format_word(const OpSeq& w) {
    std::string s;
    s.reserve(w.size());
    for (Op o : w) {
        switch (o) {
            case Op::I1: s += 'a'; break;
            case Op::I2: s += 'b'; break;
            case Op::O1: s += 'A'; break;
            case Op::O2: s += 'B'; break;
        }
    }
    return s;
}

bool is_valid_op_sequence(const OpSeq& w) {
    long h = 0;
    for (Op o : w) {
        h += is_input(o) ? 1 : -1;
        if (h < 0) return false;
    }
    return h == 0;
}

std::vector<int> apply_deque(const OpSeq& w) {
    if (!is_valid_op_sequence(w)) throw std::invalid_argument("invalid operation sequence");
    std::deque<int> dq;
    std::vector<int> out;
    int next = 1;
    for (Op o : w) {
        switch (o) {
            case Op::I1: dq.push_front(next++); break;
            case Op::I2: dq.push_back(next++); break;
            case Op::O1:
                if (dq.empty()) throw std::invalid_argument("invalid operation sequence");
                out.push_back(dq.front());
                dq.pop_front();
                break;
            case Op::O2:
                if (dq.empty()) throw std::invalid_argument("invalid operation sequence");
                out.push_back(dq.back());
                dq.pop_back();
                break;
        }
    }
    return out;
}

bool is_tsip_word(const OpSeq& w) {
    long c1 = 0, c2 = 0;
    for (Op o : w) {
        switch (o) {
            case Op::I1: ++c1; break;
            case Op::O1: --c1; break;
            case Op::I2: ++c2; break;
            case Op::O2: --c2; break;
        }
        if (c1 < 0 || c2 < 0) return false;
    }
    return c1 == 0 && c2 == 0;
}

bool outputs_eagerly(const OpSeq& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if ((w[i] == Op::I1 && w[i + 1] == Op::O2) || (w[i] == Op::I2 && w[i + 1] == Op::O1))
            return false;
    }
    return true;
}

bool is_top_happy(const OpSeq& w) {
    long h = 0;
    for (Op o : w) {
        if ((o == Op::I2 || o == Op::O2) && h < 2) return false;
        h += is_input(o) ? 1 : -1;
    }
    return true;
}

namespace {

bool is_tsip_span(const OpSeq& w, size_t a, size_t b) {
    long c1 = 0, c2 = 0;
    for (size_t i = a; i <= b; ++i) {
        switch (w[i]) {
            case Op::I1: ++c1; break;
            case Op::O1: --c1; break;
            case Op::I2: ++c2; break;
            case Op::O2: --c2; break;
        }
        if (c1 < 0 || c2 < 0) return false;
    }
    return c1 == 0 && c2 == 0;
}

void require_valid(const OpSeq& w) {
    if (!is_valid_op_sequence(w)) throw std::invalid_argument("invalid operation sequence");
}

}  // namespace

bool is_canonical_naive(const OpSeq& w) {
    require_valid(w);
    if (!outputs_eagerly(w) || !is_top_happy(w)) return false;
    for (size_t a = 0; a < w.size(); ++a) {
        if (w[a] == Op::I1) continue;  // sub-words starting with I1 are allowed
        for (size_t b = a; b < w.size(); ++b)
            if (is_tsip_span(w, a, b)) return false;
    }
    return true;
}

Decomposition decompose(const OpSeq& w) {
    if (w.empty()) throw std::invalid_argument("cannot decompose the empty sequence");
    require_valid(w);

    // Split w = u v at the first return of the deque to empty.
    size_t split = 0;
    long h = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        h += is_input(w[i]) ? 1 : -1;
        if (h == 0) {
            split = i + 1;
            break;
        }
    }

    Decomposition d;
    d.tail.assign(w.begin() + static_cast<long>(split), w.end());

    size_t pos = 0;
    while (pos < split) {
        d.skeleton.push_back(w[pos]);
        ++pos;
        if (pos == split) break;
        // Longest tsip sub-word starting here.
        long c1 = 0, c2 = 0;
        size_t best = pos;  // exclusive end of the chosen sub-word
        for (size_t e = pos; e < split; ++e) {
            switch (w[e]) {
                case Op::I1: ++c1; break;
                case Op::O1: --c1; break;
                case Op::I2: ++c2; break;
                case Op::O2: --c2; break;
            }
            if (c1 < 0 || c2 < 0) break;
            if (c1 == 0 && c2 == 0) best = e + 1;
        }
        d.insertions.emplace_back(w.begin() + static_cast<long>(pos),
                                  w.begin() + static_cast<long>(best));
        pos = best;
    }
    return d;
}

OpSeq reassemble(const Decomposition& d) {
    OpSeq w;
    for (size_t i = 0; i < d.skeleton.size(); ++i) {
        w.push_back(d.skeleton[i]);
        if (i < d.insertions.size())
            w.insert(w.end(), d.insertions[i].begin(), d.insertions[i].end());
    }
    w.insert(w.end(), d.tail.begin(), d.tail.end());
    return w;
}

namespace {

// Every tsip sub-word begins with I1, checked through the decomposition:
// a tsip sub-word of w is either a prefix of w or contained in one of the
// insertions or the tail, so the check recurses on those pieces only.
bool standard_by_decomposition(const OpSeq& w) {
    if (w.empty()) return true;
    long c1 = 0, c2 = 0;
    for (Op o : w) {
        switch (o) {
            case Op::I1: ++c1; break;
            case Op::O1: --c1; break;
            case Op::I2: ++c2; break;
            case Op::O2: --c2; break;
        }
        if (c1 < 0 || c2 < 0) break;
        if (c1 == 0 && c2 == 0) {
            if (w[0] != Op::I1) return false;  // a nonempty tsip prefix exists
            break;
        }
    }
    const Decomposition d = decompose(w);
    for (const OpSeq& ins : d.insertions)
        if (!ins.empty() && !standard_by_decomposition(ins)) return false;
    return d.tail.empty() || standard_by_decomposition(d.tail);
}

}  // namespace

bool is_canonical_decomposed(const OpSeq& w) {
    require_valid(w);
    if (w.empty()) return true;
    const Decomposition d = decompose(w);
    if (!is_top_happy(d.skeleton)) return false;
    for (const OpSeq& ins : d.insertions) {
        if (ins.empty()) continue;
        if (!outputs_eagerly(ins)) return false;
        if (!standard_by_decomposition(ins)) return false;
    }
    for (size_t i = 0; i + 1 < d.skeleton.size(); ++i) {
        const bool eager_pair = (d.skeleton[i] == Op::I1 && d.skeleton[i + 1] == Op::O2) ||
                                (d.skeleton[i] == Op::I2 && d.skeleton[i + 1] == Op::O1);
        if (eager_pair && (i >= d.insertions.size() || d.insertions[i].empty())) return false;
    }
    return is_canonical_decomposed(d.tail);
}

namespace {

// Injective 64-bit state keys for the reachability searches (n <= 10, values
// are nonzero base-16 digits, the consumed count sits in the low byte).
uint64_t deque_key(const std::vector<int>& dq, int consumed) {
    uint64_t key = 0;
    for (int v : dq) key = key * 16 + static_cast<uint64_t>(v);
    return key * 256 + static_cast<uint64_t>(consumed);
}

uint64_t tsip_key(const std::vector<int>& s1, const std::vector<int>& s2, int consumed) {
    uint64_t key = 0;
    for (int v : s1) key = key * 16 + static_cast<uint64_t>(v);
    key = key * 16 + 15;  // separator, never a value
    for (int v : s2) key = key * 16 + static_cast<uint64_t>(v);
    return key * 256 + static_cast<uint64_t>(consumed);
}

struct PermSearch {
    const std::vector<int>& perm;
    int n;
    std::unordered_set<uint64_t> seen;

    explicit PermSearch(const std::vector<int>& p) : perm(p), n(static_cast<int>(p.size())) {}
};

bool deque_search(PermSearch& ps, std::vector<int>& dq, int consumed) {
    const int out_count = consumed - static_cast<int>(dq.size());
    if (out_count == ps.n) return true;
    if (!ps.seen.insert(deque_key(dq, consumed)).second) return false;

    const int want = ps.perm[static_cast<size_t>(out_count)];
    if (!dq.empty() && dq.front() == want) {
        std::vector<int> next(dq.begin() + 1, dq.end());
        if (deque_search(ps, next, consumed)) return true;
    }
    if (dq.size() > 1 && dq.back() == want) {
        std::vector<int> next(dq.begin(), dq.end() - 1);
        if (deque_search(ps, next, consumed)) return true;
    }
    if (consumed < ps.n) {
        std::vector<int> top;
        top.reserve(dq.size() + 1);
        top.push_back(consumed + 1);
        top.insert(top.end(), dq.begin(), dq.end());
        if (deque_search(ps, top, consumed + 1)) return true;
        std::vector<int> bottom = dq;
        bottom.push_back(consumed + 1);
        if (deque_search(ps, bottom, consumed + 1)) return true;
    }
    return false;
}

bool tsip_search(PermSearch& ps, std::vector<int>& s1, std::vector<int>& s2, int consumed) {
    const int out_count = consumed - static_cast<int>(s1.size() + s2.size());
    if (out_count == ps.n) return true;
    if (!ps.seen.insert(tsip_key(s1, s2, consumed)).second) return false;

    const int want = ps.perm[static_cast<size_t>(out_count)];
    if (!s1.empty() && s1.back() == want) {
        s1.pop_back();
        const bool ok = tsip_search(ps, s1, s2, consumed);
        s1.push_back(want);
        if (ok) return true;
    }
    if (!s2.empty() && s2.back() == want) {
        s2.pop_back();
        const bool ok = tsip_search(ps, s1, s2, consumed);
        s2.push_back(want);
        if (ok) return true;
    }
    if (consumed < ps.n) {
        s1.push_back(consumed + 1);
        const bool ok1 = tsip_search(ps, s1, s2, consumed + 1);
        s1.pop_back();
        if (ok1) return true;
        s2.push_back(consumed + 1);
        const bool ok2 = tsip_search(ps, s1, s2, consumed + 1);
        s2.pop_back();
        if (ok2) return true;
    }
    return false;
}

}  // namespace

bool deque_achievable(const std::vector<int>& perm) {
    PermSearch ps(perm);
    std::vector<int> dq;
    return deque_search(ps, dq, 0);
}

bool tsip_achievable(const std::vector<int>& perm) {
    PermSearch ps(perm);
    std::vector<int> s1, s2;
    return tsip_search(ps, s1, s2, 0);
}

long count_sortable(int n, Machine machine) {
    if (n < 0 || n > 10) throw ResourceLimitError("oracle scale exceeded");
    if (n == 0) return 1;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    long count = 0;
    do {
        const bool ok = (machine == Machine::deque) ? deque_achievable(perm) : tsip_achievable(perm);
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

namespace {

// Running tsip-sub-word detector over all start positions. Appending a
// letter reports any completed sub-word; the DFS snapshots and restores the
// whole (small) state across branches.
struct SubwordScan {
    std::vector<long> c1, c2;
    std::vector<char> dead;

    struct Completion {
        bool at_zero = false;    // the whole word so far is a tsip word
        bool proper = false;     // some later start completed
        bool starts_i2 = false;  // some completed sub-word starts with I2
    };

    Completion push(Op o, const OpSeq& word_before) {
        c1.push_back(0);
        c2.push_back(0);
        dead.push_back(0);
        Completion result;
        for (size_t a = 0; a < c1.size(); ++a) {
            if (dead[a]) continue;
            switch (o) {
                case Op::I1: ++c1[a]; break;
                case Op::O1: --c1[a]; break;
                case Op::I2: ++c2[a]; break;
                case Op::O2: --c2[a]; break;
            }
            if (c1[a] < 0 || c2[a] < 0) {
                dead[a] = 1;
                continue;
            }
            if (c1[a] == 0 && c2[a] == 0) {
                const Op first = (a < word_before.size()) ? word_before[a] : o;
                if (a == 0)
                    result.at_zero = true;
                else
                    result.proper = true;
                if (first == Op::I2) result.starts_i2 = true;
            }
        }
        return result;
    }

    SubwordScan snapshot() const { return *this; }
    void restore(SubwordScan&& s) { *this = std::move(s); }
};

struct CanonicalDfs {
    int n;
    long count = 0;
    const std::function<void(const OpSeq&)>* sink = nullptr;
    OpSeq word;
    SubwordScan scan;

    explicit CanonicalDfs(int n_) : n(n_) {}

    void run(long h, int depth) {
        if (depth == 2 * n) {
            ++count;
            if (sink) (*sink)(word);
            return;
        }
        const long remaining = 2L * n - depth;
        if (h > remaining) return;
        const long inputs_used = (depth + h) / 2;
        for (Op o : {Op::I1, Op::I2, Op::O1, Op::O2}) {
            if ((o == Op::I2 || o == Op::O2) && h < 2) continue;  // top happy
            if (!word.empty()) {                                  // outputs eagerly
                const Op prev = word.back();
                if ((prev == Op::I1 && o == Op::O2) || (prev == Op::I2 && o == Op::O1)) continue;
            }
            if (is_input(o) && inputs_used >= n) continue;
            const long h2 = h + (is_input(o) ? 1 : -1);
            if (h2 < 0) continue;

            SubwordScan saved = scan.snapshot();
            const auto completion = scan.push(o, word);
            word.push_back(o);
            if (!completion.starts_i2) run(h2, depth + 1);  // standard clause intact
            word.pop_back();
            scan.restore(std::move(saved));
        }
    }
};

}  // namespace

long count_canonical(int n) {
    if (n < 0 || n > 9) throw ResourceLimitError("oracle scale exceeded");
    if (n == 0) return 1;
    CanonicalDfs dfs(n);
    dfs.run(0, 0);
    return dfs.count;
}

void for_each_canonical(int n, const std::function<void(const OpSeq&)>& fn) {
    if (n < 0 || n > 9) throw ResourceLimitError("oracle scale exceeded");
    if (n == 0) {
        fn(OpSeq{});
        return;
    }
    CanonicalDfs dfs(n);
    dfs.sink = &fn;
    dfs.run(0, 0);
}

namespace {

struct EagerTsipDfs {
    int n;
    long count = 0;
    OpSeq word;
    SubwordScan scan;

    explicit EagerTsipDfs(int n_) : n(n_) {}

    void run(long h1, long h2, int depth) {
        if (depth == 2 * n) {
            if (h1 == 0 && h2 == 0) ++count;
            return;
        }
        const long remaining = 2L * n - depth;
        if (h1 + h2 > remaining) return;
        const long inputs_used = (depth + h1 + h2) / 2;
        for (Op o : {Op::I1, Op::I2, Op::O1, Op::O2}) {
            if (!word.empty()) {
                const Op prev = word.back();
                if ((prev == Op::I1 && o == Op::O2) || (prev == Op::I2 && o == Op::O1)) continue;
            }
            if (is_input(o) && inputs_used >= n) continue;
            long n1 = h1, n2 = h2;
            switch (o) {
                case Op::I1: ++n1; break;
                case Op::O1: --n1; break;
                case Op::I2: ++n2; break;
                case Op::O2: --n2; break;
            }
            if (n1 < 0 || n2 < 0) continue;

            SubwordScan saved = scan.snapshot();
            const auto completion = scan.push(o, word);
            word.push_back(o);
            if (!completion.starts_i2) run(n1, n2, depth + 1);
            word.pop_back();
            scan.restore(std::move(saved));
        }
    }
};

}  // namespace

long count_eager_standard_tsip(int n) {
    if (n < 0 || n > 9) throw ResourceLimitError("oracle scale exceeded");
    if (n == 0) return 1;
    EagerTsipDfs dfs(n);
    dfs.run(0, 0, 0);
    return dfs.count;
}

namespace {

struct MTableDfs {
    int mmax;
    MTable* out;
    OpSeq word;
    SubwordScan scan;

    void run(long h, int q, int r, int depth) {
        if (depth == 2 * mmax) return;
        for (Op o : {Op::I1, Op::I2, Op::O1, Op::O2}) {
            if ((o == Op::I2 || o == Op::O2) && h < 2) continue;  // top happy
            const long h2 = h + (is_input(o) ? 1 : -1);
            if (h2 < 0) continue;

            int q2 = q;
            if (!word.empty()) {
                const Op prev = word.back();
                if ((prev == Op::I1 && o == Op::O2) || (prev == Op::I2 && o == Op::O1)) ++q2;
            }
            const int r2 = r + (h2 == 1 ? 1 : 0);

            SubwordScan saved = scan.snapshot();
            const auto completion = scan.push(o, word);
            word.push_back(o);
            if (!completion.proper) {
                if (h2 == 0) {
                    // The deque may not empty internally, so the word ends here.
                    const int m = static_cast<int>(word.size()) / 2;
                    ++out->table[static_cast<size_t>(m)][{q2, r2}];
                } else {
                    run(h2, q2, r2, depth + 1);
                }
            }
            word.pop_back();
            scan.restore(std::move(saved));
        }
    }
};

}  // namespace

MTable enumerate_M(int half_len_max) {
    if (half_len_max < 0 || half_len_max > 7) throw ResourceLimitError("oracle scale exceeded");
    MTable t;
    t.half_len_max = half_len_max;
    t.table.assign(static_cast<size_t>(half_len_max) + 1, {});
    if (half_len_max == 0) return t;
    MTableDfs dfs{half_len_max, &t, {}, {}};
    dfs.run(0, 0, 0, 0);
    return t;
}

namespace {

void valid_seq_dfs(int n, bool eager_only, OpSeq& word, long h,
                   const std::function<void(const OpSeq&)>& fn) {
    if (static_cast<int>(word.size()) == 2 * n) {
        if (h == 0) fn(word);
        return;
    }
    const long remaining = 2L * n - static_cast<long>(word.size());
    if (h > remaining) return;
    const long inputs_used = (static_cast<long>(word.size()) + h) / 2;
    for (Op o : {Op::I1, Op::I2, Op::O1, Op::O2}) {
        if (eager_only && !word.empty()) {
            const Op prev = word.back();
            if ((prev == Op::I1 && o == Op::O2) || (prev == Op::I2 && o == Op::O1)) continue;
        }
        if (is_input(o) && inputs_used >= n) continue;
        const long h2 = h + (is_input(o) ? 1 : -1);
        if (h2 < 0) continue;
        word.push_back(o);
        valid_seq_dfs(n, eager_only, word, h2, fn);
        word.pop_back();
    }
}

}  // namespace

void for_each_valid_sequence(int n, bool eager_only, const std::function<void(const OpSeq&)>& fn) {
    OpSeq word;
    if (n == 0) {
        fn(word);
        return;
    }
    valid_seq_dfs(n, eager_only, word, 0, fn);
}

}  // namespace dqs
