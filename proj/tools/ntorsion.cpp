// Command-line driver: analyse bound quiver algebras, decide and enumerate
// higher torsion classes and intermediate aisles, and run the theorem-level
// cross-check suites on the bundled corpus.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ntors/suites.hpp"

using namespace ntors;

namespace {

struct CliConfig {
    std::string algebra_file;
    std::string corpus_name;
    uint64_t seed{0};
    bool no_timings{false};
    std::string format{"json"};
    std::optional<uint32_t> char_override;
    std::string caps;
};

AlgebraSpecFile load_spec(const CliConfig& cfg) {
    if (!cfg.algebra_file.empty()) {
        std::ifstream in(cfg.algebra_file);
        if (!in) throw parse_error("cannot open " + cfg.algebra_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_spec(ss.str(), cfg.algebra_file);
    }
    const CorpusEntry& e = corpus_entry(cfg.corpus_name.empty() ? "gamma" : cfg.corpus_name);
    return parse_spec(e.text, e.name);
}

SessionOptions session_options(const CliConfig& cfg) {
    SessionOptions opt;
    opt.seed = cfg.seed;
    opt.char_override = cfg.char_override;
    if (!cfg.caps.empty()) {
        std::stringstream ss(cfg.caps);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw parse_error("caps: expected key=value");
            std::string key = kv.substr(0, eq);
            int val = std::stoi(kv.substr(eq + 1));
            if (key == "mult") {
                opt.tcaps.mult_cap = val;
                opt.acaps.mult_cap = val;
            } else if (key == "quot_dim") {
                opt.tcaps.quot_dim_cap = val;
            } else if (key == "window_lo") {
                opt.acaps.window_lo = val;
            } else if (key == "window_hi") {
                opt.acaps.window_hi = val;
            } else if (key == "delta_dim") {
                opt.acaps.delta_dim_cap = val;
            } else if (key == "registry_dim") {
                opt.registry_dim_cap = val;
            } else {
                throw parse_error("caps: unknown key '" + key + "'");
            }
        }
    }
    return opt;
}

Json caps_json(const SessionOptions& opt) {
    Json c;
    c["mult"] = opt.tcaps.mult_cap;
    c["quot_dim"] = opt.tcaps.quot_dim_cap;
    c["window_lo"] = opt.acaps.window_lo;
    c["window_hi"] = opt.acaps.window_hi;
    c["delta_dim"] = opt.acaps.delta_dim_cap;
    c["registry_dim"] = opt.registry_dim_cap;
    return c;
}

void print_text(const Json& j, int indent = 0) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_structured()) {
            std::cout << pad << it.key() << ":\n";
            if (it->is_array()) {
                for (const auto& el : *it) {
                    if (el.is_structured()) {
                        bool first = true;
                        for (auto f = el.begin(); f != el.end(); ++f) {
                            std::cout << pad << (first ? "  - " : "    ") << f.key() << ": "
                                      << (f->is_string() ? f->get<std::string>() : f->dump())
                                      << "\n";
                            first = false;
                        }
                    } else {
                        std::cout << pad << "  - "
                                  << (el.is_string() ? el.get<std::string>() : el.dump()) << "\n";
                    }
                }
            } else {
                print_text(*it, indent + 1);
            }
        } else {
            std::cout << pad << it.key() << ": "
                      << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
        }
    }
}

int emit(const CliConfig& cfg, const Session& S, const std::string& command, Json body,
         double elapsed_ms) {
    Json out;
    out["command"] = command;
    out["algebra"] = S.spec.name;
    out["n"] = S.A.n;
    out["char"] = S.A.F.p;
    out["verdicts"] = std::move(body);
    out["caps"] = caps_json(S.opt);
    out["seed"] = cfg.seed;
    if (!cfg.no_timings) out["elapsed_ms"] = elapsed_ms;
    bool ok = out["verdicts"].value("ok", true);
    if (cfg.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        print_text(out);
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher torsion classes over bound quiver algebras"};
    app.require_subcommand(1);
    CliConfig cfg;
    app.add_option("--algebra", cfg.algebra_file, "algebra description file");
    app.add_option("--corpus", cfg.corpus_name, "bundled corpus entry (default: gamma)");
    app.add_option("--seed", cfg.seed, "seed for randomized decomposition searches");
    app.add_option("--char", cfg.char_override, "override the field characteristic");
    app.add_option("--caps", cfg.caps, "comma list key=value: mult, quot_dim, window_lo, "
                                       "window_hi, delta_dim, registry_dim");
    app.add_option("--format", cfg.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--no-timings", cfg.no_timings, "omit timings from the report");

    auto* analyze = app.add_subcommand("analyze", "indecomposables, gldim, cluster tilting");
    auto* corpus_cmd = app.add_subcommand("corpus", "list bundled algebras");
    auto* torsion = app.add_subcommand("torsion", "torsion class operations");
    auto* t_enum = torsion->add_subcommand("enumerate", "all torsion classes in M");
    auto* t_check = torsion->add_subcommand("check", "decide one subset");
    std::string subset_csv;
    t_check->add_option("--subset", subset_csv, "comma separated labels")->required();
    auto* aisles = app.add_subcommand("aisles", "aisle operations");
    auto* a_enum = aisles->add_subcommand("enumerate", "intermediate aisles in C");
    auto* check = app.add_subcommand("check", "theorem-level verification suites");
    std::string which;
    check->add_option("suite", which, "theorem-a|theorem-b|theorem-c|wakamatsu|apr")->required();
    int vertex = 0;
    check->add_option("--vertex", vertex, "vertex for the apr suite (1-based)");
    auto* angle = app.add_subcommand("angle", "angle operations");
    auto* a_complete = angle->add_subcommand("complete", "complete a connecting morphism");
    std::string delta_spec;
    a_complete->add_option("--delta", delta_spec, "label@shift->label@shift[:coeffs]")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus_cmd->parsed()) {
            Json out;
            out["command"] = "corpus";
            Json names = Json::array();
            for (const CorpusEntry& e : corpus()) names.push_back(e.name);
            out["algebras"] = names;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        auto t0 = std::chrono::steady_clock::now();
        AlgebraSpecFile spec = load_spec(cfg);
        auto S = make_session(spec, session_options(cfg));
        Json body;
        std::string command;
        if (analyze->parsed()) {
            command = "analyze";
            body = cmd_analyze(*S);
        } else if (t_enum->parsed()) {
            command = "torsion enumerate";
            body = cmd_torsion_enumerate(*S);
        } else if (t_check->parsed()) {
            command = "torsion check";
            body = cmd_torsion_check(*S, subset_from_labels(*S, subset_csv));
        } else if (a_enum->parsed()) {
            command = "aisles enumerate";
            body = cmd_aisles_enumerate(*S);
        } else if (check->parsed()) {
            command = "check " + which;
            if (which == "theorem-a") {
                body = cmd_check_theorem_a(*S);
            } else if (which == "theorem-b") {
                body = cmd_check_theorem_b(*S);
            } else if (which == "theorem-c") {
                body = cmd_check_theorem_c(*S);
            } else if (which == "wakamatsu") {
                body = cmd_check_wakamatsu(*S);
            } else if (which == "apr") {
                if (vertex <= 0) throw parse_error("apr: --vertex required");
                body = cmd_check_apr(*S, vertex);
            } else {
                throw parse_error("unknown suite '" + which + "'");
            }
        } else if (a_complete->parsed()) {
            command = "angle complete";
            body = cmd_angle_complete(*S, delta_spec);
        } else {
            std::cerr << app.help() << "\n";
            return 2;
        }
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return emit(cfg, *S, command, std::move(body), ms);
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cap_error& e) {
        std::cerr << "scope error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
