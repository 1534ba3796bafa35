#include "ntors/specfile.hpp"

#include <map>
#include <sstream>

namespace ntors {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
}

} // namespace

AlgebraSpecFile parse_spec(const std::string& text, const std::string& name) {
    AlgebraSpecFile out;
    out.name = name;
    QuiverPresentation& q = out.pres;
    q.p = 5;
    q.n = 1;
    q.num_vertices = 0;
    std::map<std::string, int> arrow_by_name;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    bool saw_vertices = false;

    auto parse_path = [&](const std::string& s, int lno) {
        std::vector<int> arrows;
        std::string cur;
        std::vector<std::string> names;
        for (char c : s) {
            if (c == '.') {
                names.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        names.push_back(cur);
        // b.a means a first; reverse into application order.
        std::vector<int> word;
        for (auto it = names.rbegin(); it != names.rend(); ++it) {
            auto f = arrow_by_name.find(*it);
            if (f == arrow_by_name.end()) fail(lno, "unknown arrow '" + *it + "'");
            word.push_back(f->second);
        }
        return word;
    };

    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<std::string> tok = tokens_of(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "char") {
            if (tok.size() != 2) fail(lineno, "char expects one value");
            q.p = static_cast<uint32_t>(std::stoul(tok[1]));
            if (!is_prime(q.p)) fail(lineno, "characteristic must be prime");
        } else if (key == "n") {
            if (tok.size() != 2) fail(lineno, "n expects one value");
            q.n = std::stoi(tok[1]);
            if (q.n < 1) fail(lineno, "n must be >= 1");
        } else if (key == "vertices") {
            if (tok.size() != 2) fail(lineno, "vertices expects one value");
            q.num_vertices = std::stoi(tok[1]);
            if (q.num_vertices < 1) fail(lineno, "need at least one vertex");
            saw_vertices = true;
        } else if (key == "arrow") {
            if (!saw_vertices) fail(lineno, "arrow before vertices");
            if (tok.size() != 4) fail(lineno, "arrow expects: name src tgt");
            int s = std::stoi(tok[2]) - 1, t = std::stoi(tok[3]) - 1;
            if (s < 0 || s >= q.num_vertices || t < 0 || t >= q.num_vertices)
                fail(lineno, "dangling vertex in arrow");
            if (arrow_by_name.count(tok[1])) fail(lineno, "duplicate arrow name");
            arrow_by_name[tok[1]] = static_cast<int>(q.arrows.size());
            q.arrows.push_back({s, t, tok[1]});
        } else if (key == "relation") {
            if (tok.size() < 2) fail(lineno, "empty relation");
            std::vector<RelTerm> rel;
            uint32_t sign = 1; // 1 or p-1
            for (size_t k = 1; k < tok.size(); ++k) {
                if (tok[k] == "+") {
                    sign = 1;
                    continue;
                }
                if (tok[k] == "-") {
                    sign = q.p - 1;
                    continue;
                }
                std::string term = tok[k];
                long long coeff = 1;
                auto star = term.find('*');
                if (star != std::string::npos) {
                    coeff = std::stoll(term.substr(0, star));
                    term = term.substr(star + 1);
                }
                RelTerm rt;
                long long c = coeff % static_cast<long long>(q.p);
                if (c < 0) c += q.p;
                rt.coeff = static_cast<uint32_t>(c) * 1u;
                if (sign == q.p - 1) rt.coeff = (q.p - rt.coeff % q.p) % q.p;
                if (rt.coeff == 0) fail(lineno, "zero coefficient in relation");
                rt.arrows = parse_path(term, lineno);
                if (rt.arrows.size() < 2) fail(lineno, "relation path shorter than 2 arrows");
                rel.push_back(std::move(rt));
                sign = 1;
            }
            // Parallelism is re-validated when the algebra is built; check the
            // basics here to report a line number.
            int s = -1, t = -1;
            for (const RelTerm& rt : rel) {
                for (size_t i = 0; i + 1 < rt.arrows.size(); ++i)
                    if (q.arrows[rt.arrows[i]].tgt != q.arrows[rt.arrows[i + 1]].src)
                        fail(lineno, "relation path not composable");
                int ts = q.arrows[rt.arrows.front()].src;
                int tt = q.arrows[rt.arrows.back()].tgt;
                if (s == -1) {
                    s = ts;
                    t = tt;
                } else if (ts != s || tt != t) {
                    fail(lineno, "relation terms not parallel");
                }
            }
            q.relations.push_back(std::move(rel));
        } else if (key == "module_M") {
            if (tok.size() != 2) fail(lineno, "module_M expects label=dims");
            auto eq = tok[1].find('=');
            if (eq == std::string::npos) fail(lineno, "module_M expects label=dims");
            std::string label = tok[1].substr(0, eq);
            std::vector<int> dims;
            std::string rest = tok[1].substr(eq + 1);
            std::string cur;
            for (char c : rest + ",") {
                if (c == ',') {
                    if (cur.empty()) fail(lineno, "bad dimension vector");
                    dims.push_back(std::stoi(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            out.declared_M.emplace_back(label, dims);
        } else {
            fail(lineno, "unknown keyword '" + key + "'");
        }
    }
    if (!saw_vertices) throw parse_error("no vertices declared");
    for (const auto& [label, dims] : out.declared_M)
        if (static_cast<int>(dims.size()) != q.num_vertices)
            throw parse_error("module_M " + label + ": dimension vector length mismatch");
    return out;
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"gamma",
         "# kQ/(ba) on 1 -> 2 -> 3, the 2-representation-finite running example\n"
         "char 5\n"
         "n 2\n"
         "vertices 3\n"
         "arrow a 1 2\n"
         "arrow b 2 3\n"
         "relation 1*b.a\n"
         "module_M 3=0,0,1\n"
         "module_M 2/3=0,1,1\n"
         "module_M 1/2=1,1,0\n"
         "module_M 1=1,0,0\n"},
        {"a2",
         "# hereditary A_2, classic torsion theory\n"
         "char 5\n"
         "n 1\n"
         "vertices 2\n"
         "arrow a 1 2\n"},
        {"a3",
         "# hereditary A_3\n"
         "char 5\n"
         "n 1\n"
         "vertices 3\n"
         "arrow a 1 2\n"
         "arrow b 2 3\n"},
        {"nakayama4",
         "# kA_4 with all length-2 relations; 3-representation finite\n"
         "char 5\n"
         "n 3\n"
         "vertices 4\n"
         "arrow a 1 2\n"
         "arrow b 2 3\n"
         "arrow c 3 4\n"
         "relation 1*b.a\n"
         "relation 1*c.b\n"},
        {"point",
         "# one simple vertex, degenerate sanity case\n"
         "char 5\n"
         "n 1\n"
         "vertices 1\n"},
    };
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    for (const CorpusEntry& e : corpus())
        if (e.name == name) return e;
    throw parse_error("unknown corpus algebra '" + name + "'");
}

} // namespace ntors
