#include "ntors/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntors {

namespace {

int word_src(const QuiverPresentation& q, const std::vector<int>& w, int fallback) {
    return w.empty() ? fallback : q.arrows[w.front()].src;
}
int word_tgt(const QuiverPresentation& q, const std::vector<int>& w, int fallback) {
    return w.empty() ? fallback : q.arrows[w.back()].tgt;
}

bool composable(const QuiverPresentation& q, const std::vector<int>& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (q.arrows[w[i]].tgt != q.arrows[w[i + 1]].src) return false;
    return true;
}

// Degree-lex order used to pick leading terms: longer wins, then the
// lexicographically larger arrow sequence.
bool deg_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void validate(const QuiverPresentation& q) {
    if (q.num_vertices <= 0) throw std::runtime_error("presentation: need at least one vertex");
    if (!is_prime(q.p)) throw std::runtime_error("presentation: characteristic must be prime");
    if (q.n < 1) throw std::runtime_error("presentation: n must be >= 1");
    for (const Arrow& a : q.arrows)
        if (a.src < 0 || a.src >= q.num_vertices || a.tgt < 0 || a.tgt >= q.num_vertices)
            throw std::runtime_error("presentation: arrow endpoint out of range");
    for (const auto& rel : q.relations) {
        if (rel.empty()) throw std::runtime_error("presentation: empty relation");
        int s = -1, t = -1;
        for (const RelTerm& term : rel) {
            if (term.arrows.size() < 2)
                throw std::runtime_error("presentation: relation term of length < 2 (ideal not admissible)");
            if (!composable(q, term.arrows))
                throw std::runtime_error("presentation: relation path not composable");
            int ts = word_src(q, term.arrows, -1), tt = word_tgt(q, term.arrows, -1);
            if (s == -1) {
                s = ts;
                t = tt;
            } else if (s != ts || t != tt) {
                throw std::runtime_error("presentation: relation terms not parallel");
            }
            if (term.coeff % q.p == 0)
                throw std::runtime_error("presentation: zero coefficient in relation");
        }
    }
}

using Word = std::vector<int>;

// Formal combination of words with a common source vertex.
using WordCombo = std::map<Word, uint32_t>;

void add_term(const Fp& F, WordCombo& c, const Word& w, uint32_t coeff) {
    if (coeff == 0) return;
    auto it = c.find(w);
    if (it == c.end()) {
        c.emplace(w, coeff);
    } else {
        it->second = F.add(it->second, coeff);
        if (it->second == 0) c.erase(it);
    }
}

// Finds the first occurrence of any rule lead inside w; returns (rule, pos).
std::pair<int, int> find_redex(const std::vector<PathBasis::Rule>& rules, const Word& w) {
    for (size_t pos = 0; pos < w.size(); ++pos)
        for (size_t r = 0; r < rules.size(); ++r) {
            const Word& lead = rules[r].lead;
            if (pos + lead.size() > w.size()) continue;
            if (std::equal(lead.begin(), lead.end(), w.begin() + pos))
                return {static_cast<int>(r), static_cast<int>(pos)};
        }
    return {-1, -1};
}

WordCombo reduce_full(const Fp& F, const std::vector<PathBasis::Rule>& rules, WordCombo c) {
    for (;;) {
        bool changed = false;
        for (auto it = c.begin(); it != c.end(); ++it) {
            auto [r, pos] = find_redex(rules, it->first);
            if (r < 0) continue;
            Word w = it->first;
            uint32_t coeff = it->second;
            c.erase(it);
            const PathBasis::Rule& rule = rules[r];
            for (const auto& [rc, rword] : rule.rhs) {
                Word nw(w.begin(), w.begin() + pos);
                nw.insert(nw.end(), rword.begin(), rword.end());
                nw.insert(nw.end(), w.begin() + pos + rule.lead.size(), w.end());
                add_term(F, c, nw, F.mul(coeff, rc));
            }
            changed = true;
            break;
        }
        if (!changed) return c;
    }
}

Combo combo_mul(const Algebra& A, const Combo& x, const Combo& y); // fwd

} // namespace

int PathBasis::idempotent(int v) const {
    auto it = index.find({v, {}});
    if (it == index.end()) throw std::runtime_error("idempotent: missing e_v");
    return it->second;
}

Combo normal_form(const Algebra& A, int src, const std::vector<int>& word) {
    if (!composable(A.pres, word)) throw std::runtime_error("normal_form: word not composable");
    if (!word.empty() && A.pres.arrows[word.front()].src != src)
        throw std::runtime_error("normal_form: source mismatch");
    WordCombo c;
    add_term(A.F, c, word, 1);
    c = reduce_full(A.F, A.basis.rules, std::move(c));
    Combo out;
    for (const auto& [w, coeff] : c) {
        auto it = A.basis.index.find({word_src(A.pres, w, src), w});
        if (it == A.basis.index.end())
            throw std::runtime_error("normal_form: irreducible word missing from basis");
        out.emplace_back(it->second, coeff);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Combo combo_mul(const Algebra& A, const Combo& x, const Combo& y) {
    // x o y, y applied first.
    std::map<int, uint32_t> acc;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) {
            for (const auto& [k, ck] : A.basis.mult[i][j]) {
                uint32_t v = A.F.mul(A.F.mul(ci, cj), ck);
                uint32_t& slot = acc[k];
                slot = A.F.add(slot, v);
            }
        }
    Combo out;
    for (const auto& [k, v] : acc)
        if (v) out.emplace_back(k, v);
    return out;
}

} // namespace

Algebra make_algebra(QuiverPresentation pres, int length_cap) {
    validate(pres);
    Algebra A;
    A.F = Fp{pres.p};
    A.n = pres.n;
    A.pres = std::move(pres);
    const QuiverPresentation& q = A.pres;
    PathBasis& B = A.basis;

    // Rewriting rules: leading term is deg-lex largest, moved to the left.
    for (const auto& rel : q.relations) {
        size_t lead = 0;
        for (size_t i = 1; i < rel.size(); ++i)
            if (deg_lex_less(rel[lead].arrows, rel[i].arrows)) lead = i;
        PathBasis::Rule rule;
        rule.lead = rel[lead].arrows;
        uint32_t c = A.F.neg(A.F.inv(rel[lead].coeff % A.F.p));
        for (size_t i = 0; i < rel.size(); ++i) {
            if (i == lead) continue;
            rule.rhs.emplace_back(A.F.mul(c, rel[i].coeff % A.F.p), rel[i].arrows);
        }
        B.rules.push_back(std::move(rule));
    }

    auto reducible = [&](const std::vector<int>& w) {
        return find_redex(B.rules, w).first >= 0;
    };

    // Breadth-first generation of irreducible paths. A level with no new paths
    // ends the search since subwords of irreducible words are irreducible.
    std::vector<BasisPath> level;
    for (int v = 0; v < q.num_vertices; ++v) level.push_back({v, v, {}});
    for (const BasisPath& e : level) B.paths.push_back(e);
    int len = 0;
    while (!level.empty()) {
        ++len;
        if (len > length_cap)
            throw std::runtime_error(
                "path basis: irreducible paths still appear at the length cap; "
                "ideal not admissible or cap too small");
        std::vector<BasisPath> next;
        for (const BasisPath& pth : level)
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
                if (q.arrows[a].src != pth.tgt) continue;
                BasisPath np{pth.src, q.arrows[a].tgt, pth.arrows};
                np.arrows.push_back(a);
                if (reducible(np.arrows)) continue;
                next.push_back(std::move(np));
            }
        for (const BasisPath& pth : next) B.paths.push_back(pth);
        level = std::move(next);
    }
    std::sort(B.paths.begin(), B.paths.end(), [](const BasisPath& x, const BasisPath& y) {
        if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
        if (x.src != y.src) return x.src < y.src;
        return x.arrows < y.arrows;
    });
    for (int i = 0; i < B.dim(); ++i) B.index[{B.paths[i].src, B.paths[i].arrows}] = i;

    // Multiplication table and associativity audit.
    B.mult.assign(B.dim(), std::vector<Combo>(B.dim()));
    for (int i = 0; i < B.dim(); ++i)
        for (int j = 0; j < B.dim(); ++j) {
            if (B.paths[j].tgt != B.paths[i].src) continue;
            Word w = B.paths[j].arrows;
            w.insert(w.end(), B.paths[i].arrows.begin(), B.paths[i].arrows.end());
            B.mult[i][j] = normal_form(A, B.paths[j].src, w);
        }
    for (int i = 0; i < B.dim(); ++i)
        for (int j = 0; j < B.dim(); ++j) {
            if (B.paths[j].tgt != B.paths[i].src) continue;
            for (int k = 0; k < B.dim(); ++k) {
                if (B.paths[k].tgt != B.paths[j].src) continue;
                Combo ij = B.mult[i][j];
                Combo left = combo_mul(A, ij, Combo{{k, 1}});
                Combo right = combo_mul(A, Combo{{i, 1}}, B.mult[j][k]);
                if (left != right)
                    throw std::runtime_error("path basis: multiplication table not associative "
                                             "(rewriting system not confluent)");
            }
        }
    return A;
}

QuiverPresentation opposite_presentation(const QuiverPresentation& pres) {
    QuiverPresentation op = pres;
    for (Arrow& a : op.arrows) std::swap(a.src, a.tgt);
    for (auto& rel : op.relations)
        for (RelTerm& t : rel) std::reverse(t.arrows.begin(), t.arrows.end());
    return op;
}

Algebra opposite_algebra(const Algebra& A, int length_cap) {
    return make_algebra(opposite_presentation(A.pres), length_cap);
}

} // namespace ntors
