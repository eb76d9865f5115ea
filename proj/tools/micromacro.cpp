#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "micromacro/budget.hpp"
#include "micromacro/build.hpp"
#include "micromacro/census.hpp"
#include "micromacro/ebound.hpp"
#include "micromacro/errors.hpp"
#include "micromacro/ldev.hpp"
#include "micromacro/markov.hpp"
#include "micromacro/process.hpp"
#include "micromacro/produce.hpp"
#include "micromacro/repro.hpp"
#include "micromacro/serialize.hpp"

using namespace micromacro;

namespace {

System read_system(const std::string& path) {
    if (path == "-") return load_system(std::cin);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    return load_system(in);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (const auto& tok : split(text, ','))
        out.push_back(std::stoi(tok));
    return out;
}

MacroDistribution parse_distribution(const System& s, const std::string& text) {
    MacroDistribution q;
    for (const auto& tok : split(text, ','))
        q.push_back(parse_rational(tok));
    check_distribution(s, q);
    return q;
}

Json distribution_json(const MacroDistribution& q) {
    Json out = Json::array();
    for (const auto& v : q) out.push_back(rational_json(v));
    return out;
}

Json kernel_json(const MacroKernel& m) {
    Json rows = Json::array();
    for (const auto& row : m.rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json density_json(const ProductionDensity& w) {
    Json out = Json::array();
    for (const auto& [rho, weight] : w) {
        Json e;
        e["ratio"] = to_string(rho);
        e["weight"] = to_string(weight);
        out.push_back(std::move(e));
    }
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json inspect_json(const System& s) {
    Json j;
    j["n"] = s.n;
    j["labels"] = s.k;
    j["block_size"] = s.block_size;
    Json ent = Json::array();
    for (int a = 0; a < s.k; ++a) ent.push_back(logvalue_json(boltzmann_entropy(s, a)));
    j["entropy"] = std::move(ent);
    auto cls = entropy_classes(s);
    j["decreasing"] = cls.decreasing.size();
    j["constant"] = cls.constant.size();
    j["increasing"] = cls.increasing.size();
    auto eq = equilibrium_report(s);
    j["equilibrium_ratio"] = rational_json(eq.ratio);
    j["alpha_order"] = order_of_alpha(s).get_str();
    if (s.reversion) {
        auto rr = reversion_report(s);
        Json r;
        r["invariant"] = rr.invariant;
        r["equivariant"] = rr.equivariant;
        r["entropy_preserving"] = rr.entropy_preserving;
        j["reversion"] = std::move(r);
    }
    return j;
}

std::map<long, long> parse_parts(const std::string& text) {
    std::map<long, long> parts;
    for (const auto& tok : split(text, ',')) {
        auto kv = split(tok, ':');
        if (kv.size() != 2) throw ValidationError("parts must be size:count pairs");
        parts[std::stol(kv[0])] += std::stol(kv[1]);
    }
    return parts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for finite micro-macro dynamics"};
    app.require_subcommand(1);

    std::string input = "-", input_b, output_q, path_arg, parts_arg, set_arg, eps_arg = "1/10";
    std::string kind_arg, op_arg, mode_arg = "report";
    int n_arg = 0, k_arg = 0, level_arg = 2, N_arg = 1, horizon = 1, depth = 3, length = 2;
    std::vector<int> n_list;
    bool flag_formula = false, flag_brute = false, flag_labeled = false, flag_dmax = false,
         flag_iso = false, flag_fluct = false;
    int threshold = -1, d_arg = 1;

    auto* c_inspect = app.add_subcommand("inspect", "Summarize a system");
    c_inspect->add_option("-i,--input", input);

    auto* c_build = app.add_subcommand("build", "Generate a system");
    std::string generator;
    c_build->add_option("generator", generator,
                        "max-decreasing | remark | empirical | z2d | zones | iterate")
        ->required();
    c_build->add_option("-i,--input", input);
    c_build->add_option("--parts", parts_arg);
    c_build->add_option("--n", n_arg);
    c_build->add_option("--N", N_arg);
    c_build->add_option("--d", d_arg);
    c_build->add_option("--eps", eps_arg);
    c_build->add_option("--levels", level_arg);
    c_build->add_option("--length", length);

    auto* c_combine = app.add_subcommand("combine", "Combine two systems");
    c_combine->add_option("--kind", kind_arg, "union | product | reunion | extensive")
        ->required();
    c_combine->add_option("-a,--first", input)->required();
    c_combine->add_option("-b,--second", input_b)->required();

    auto* c_derive = app.add_subcommand("derive", "Derive a system from another");
    c_derive->add_option("--op", op_arg, "coarsen | restrict | inverse | zones | iterate")
        ->required();
    c_derive->add_option("-i,--input", input);
    c_derive->add_option("--map", set_arg);
    c_derive->add_option("--set", parts_arg);
    c_derive->add_option("--length", length);

    auto* c_repro = app.add_subcommand("repro", "Reproducible transition structure");
    c_repro->add_option("-i,--input", input);
    std::string repro_eps;
    c_repro->add_option("--eps", repro_eps);

    auto* c_kernel = app.add_subcommand("kernel", "Macrostate transition kernel");
    c_kernel->add_option("-i,--input", input);
    c_kernel->add_option("--power", horizon);

    auto* c_chain = app.add_subcommand("chain", "Communication classes and limits");
    c_chain->add_option("-i,--input", input);
    c_chain->add_option("--q", output_q);

    auto* c_process = app.add_subcommand("process", "Macro process checks");
    c_process->add_option("-i,--input", input);
    c_process->add_option("--path", path_arg);
    c_process->add_option("--depth", depth);

    auto* c_produce = app.add_subcommand("produce", "Entropy production");
    c_produce->add_option("mode", mode_arg, "report | classes");
    c_produce->add_option("-i,--input", input);
    c_produce->add_option("--q", output_q);
    c_produce->add_option("--n", horizon);
    c_produce->add_flag("--fluctuation", flag_fluct);
    c_produce->add_option("--threshold", threshold);

    auto* c_ebound = app.add_subcommand("ebound", "Reaching-time structure");
    c_ebound->add_option("-i,--input", input);
    std::string e_arg;
    c_ebound->add_option("--E", e_arg)->required();

    auto* c_census = app.add_subcommand("census", "Counting and isomorphism");
    c_census->add_flag("--formula", flag_formula);
    c_census->add_flag("--bruteforce", flag_brute);
    c_census->add_flag("--labeled", flag_labeled);
    c_census->add_flag("--dmax", flag_dmax);
    c_census->add_flag("--isomorphic", flag_iso);
    c_census->add_option("--n", n_arg);
    c_census->add_option("--k", k_arg);
    c_census->add_option("-a,--first", input);
    c_census->add_option("-b,--second", input_b);

    auto* c_ldev = app.add_subcommand("ldev", "Large-deviation checks");
    c_ldev->add_option("--mode", mode_arg, "sanov | rate | dominance")->required();
    c_ldev->add_option("-i,--input", input);
    c_ldev->add_option("--N", N_arg);
    c_ldev->add_option("--N-list", n_list)->delimiter(',');
    c_ldev->add_option("--eps", eps_arg);
    c_ldev->add_option("--levels", level_arg);

    auto* c_selftest = app.add_subcommand("selftest", "Run built-in identity checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (const auto* sub = app.get_subcommands().front(); sub == c_inspect) {
            emit(inspect_json(read_system(input)));
        } else if (sub == c_build) {
            LogValue eps = LogValue::constant(parse_rational(eps_arg));
            System out;
            if (generator == "max-decreasing")
                out = max_decreasing_system(parse_parts(parts_arg));
            else if (generator == "remark")
                out = remark_system(n_arg);
            else if (generator == "empirical")
                out = empirical_system(read_system(input), N_arg, eps, level_arg);
            else if (generator == "z2d")
                out = z2d_system(d_arg, N_arg, eps, level_arg);
            else if (generator == "zones")
                out = zones(read_system(input));
            else if (generator == "iterate")
                out = iterate_labels(read_system(input), length);
            else
                throw ValidationError("unknown generator: " + generator);
            std::cout << emit_system(out);
        } else if (sub == c_combine) {
            CombineKind kind;
            if (kind_arg == "union")
                kind = CombineKind::DisjointUnion;
            else if (kind_arg == "product")
                kind = CombineKind::Product;
            else if (kind_arg == "reunion")
                kind = CombineKind::Reunion;
            else if (kind_arg == "extensive")
                kind = CombineKind::ExtensiveJoint;
            else
                throw ValidationError("unknown combine kind: " + kind_arg);
            std::cout << emit_system(combine(kind, read_system(input), read_system(input_b)));
        } else if (sub == c_derive) {
            System s = read_system(input);
            System out;
            if (op_arg == "coarsen")
                out = coarsen(s, parse_ints(set_arg));
            else if (op_arg == "restrict")
                out = restrict_to(s, parse_ints(parts_arg));
            else if (op_arg == "inverse")
                out = inverse_system(s);
            else if (op_arg == "zones")
                out = zones(s);
            else if (op_arg == "iterate")
                out = iterate_labels(s, length);
            else
                throw ValidationError("unknown derive op: " + op_arg);
            std::cout << emit_system(out);
        } else if (sub == c_repro) {
            System s = read_system(input);
            auto g = repro_graph(s);
            Json j;
            j["next"] = g.next;
            j["cycles"] = g.cycles;
            Json trees = Json::array();
            for (const auto& t : g.trees) {
                Json tj;
                tj["root"] = t.root;
                tj["members"] = t.members;
                trees.push_back(std::move(tj));
            }
            j["trees"] = std::move(trees);
            inverse_repro_check(s);
            j["inverse_structure"] = "verified";
            if (!repro_eps.empty()) {
                auto er = epsilon_repro(s, parse_rational(repro_eps));
                Json ej;
                ej["sink_free"] = er.sink_free;
                ej["gap_condition"] = er.gap_condition;
                if (er.decreasing_ratio)
                    ej["decreasing_ratio"] = rational_json(*er.decreasing_ratio);
                j["epsilon"] = std::move(ej);
            }
            if (s.reversion && reversion_report(s).equivariant)
                j["matched_pairs"] = p10_check(s).matched_pairs;
            emit(j);
        } else if (sub == c_kernel) {
            System s = read_system(input);
            Json j;
            j["kernel"] = kernel_json(kernel(s));
            if (horizon > 1) {
                j["power"] = horizon;
                j["kernel_power"] = kernel_json(kernel_power(s, horizon));
                j["markov_defect"] = rational_json(markov_defect(s, horizon));
            }
            j["detailed_balance"] = reverse_kernel(s).detailed_balance;
            lifted_kernel(s);
            j["lifted"] = "verified";
            emit(j);
        } else if (sub == c_chain) {
            System s = read_system(input);
            MacroDistribution q =
                output_q.empty() ? macro_measure(s) : parse_distribution(s, output_q);
            auto rep = limit_distribution(s, q);
            Json j;
            j["classes"] = rep.structure.classes;
            j["period"] = rep.structure.period;
            j["cyclic_index"] = rep.structure.cyclic_index;
            j["absorbing"] = rep.structure.absorbing;
            Json subs = Json::array();
            for (const auto& per_class : rep.sublimit) {
                Json cj = Json::array();
                for (const auto& lim : per_class) cj.push_back(distribution_json(lim));
                subs.push_back(std::move(cj));
            }
            j["sublimits"] = std::move(subs);
            j["probe_iterations"] = rep.probe_iterations;
            emit(j);
        } else if (sub == c_process) {
            System s = read_system(input);
            Json j;
            if (!path_arg.empty()) {
                auto labels = parse_ints(path_arg);
                j["path"] = labels;
                j["cylinder"] = rational_json(cylinder_prob(s, macro_measure(s), labels));
            }
            auto mk = markovianity_check(s, depth);
            j["markov"] = mk.markov;
            j["equivariant"] = mk.equivariant;
            if (mk.witness) {
                Json w;
                w["history"] = mk.witness->history;
                w["next"] = mk.witness->next;
                w["conditioned"] = rational_json(mk.witness->conditioned);
                w["one_step"] = rational_json(mk.witness->one_step);
                j["witness"] = std::move(w);
            }
            auto st = stationarity_check(s, macro_measure(s), depth);
            j["stationary"] = st.stationary;
            reverse_process_check(s, depth);
            j["reverse"] = "verified";
            emit(j);
        } else if (sub == c_produce) {
            System s = read_system(input);
            if (mode_arg == "classes") {
                auto cls = entropy_classes(s);
                Json j;
                j["decreasing"] = cls.decreasing.size();
                j["constant"] = cls.constant.size();
                j["increasing"] = cls.increasing.size();
                emit(j);
            } else {
                MacroDistribution q =
                    output_q.empty() ? uniform_on_labels(s) : parse_distribution(s, output_q);
                Json j;
                j["n"] = horizon;
                j["mean_production"] = logvalue_json(mean_production(s, q, horizon));
                j["increment"] = logvalue_json(delta(s, q, horizon));
                j["density"] = density_json(production_density(s, q, horizon));
                auto pos = positivity_criteria(s, horizon);
                j["preserves_entropy"] = pos.preserves_entropy;
                j["halfspace_sign"] = pos.halfspace_sign;
                if (flag_fluct) {
                    auto f = fluctuation_check(s, q, horizon);
                    j["fluctuation_zero"] = f.zero;
                }
                if (threshold >= 0) {
                    auto sub_rep = subequilibrium_profile(s, threshold, horizon);
                    Json tj;
                    tj["sigma"] = logvalue_json(sub_rep.sigma_q);
                    tj["invariant"] = sub_rep.invariant;
                    j["subequilibrium"] = std::move(tj);
                }
                emit(j);
            }
        } else if (sub == c_ebound) {
            System s = read_system(input);
            auto rs = reaching_system(s, parse_ints(e_arg));
            auto rep = structure_report(rs);
            Json j;
            j["e"] = rs.e;
            j["levels"] = rs.L;
            j["level_size"] = rep.level_size;
            j["entry_count"] = rep.entry_count;
            j["onto"] = rep.onto;
            if (rep.onto) {
                j["decreasing"] = rep.d;
                j["constant"] = rep.c;
                j["increasing"] = rep.i;
                j["mean_arrow"] = rational_json(rep.mean_arrow);
            }
            double_cover_report(rs);
            j["double_cover"] = "verified";
            emit(j);
        } else if (sub == c_census) {
            Json j;
            if (flag_formula) j["classes"] = count_classes(n_arg).get_str();
            if (flag_brute)
                j["orbits"] = enumerate_classes_bruteforce(n_arg).count.get_str();
            if (flag_labeled) j["labeled"] = count_labeled(n_arg, k_arg).get_str();
            if (flag_dmax) j["d_max"] = d_max(n_arg);
            if (flag_iso)
                j["isomorphic"] = is_isomorphic(read_system(input), read_system(input_b));
            emit(j);
        } else if (sub == c_ldev) {
            System base = read_system(input);
            LogValue eps = LogValue::constant(parse_rational(eps_arg));
            Json j;
            if (mode_arg == "sanov") {
                auto rep = exact_sanov_identity(base, N_arg, eps, level_arg);
                Json levels = Json::array();
                for (int l = 0; l < rep.levels; ++l) {
                    Json lj;
                    lj["level"] = l + 1;
                    lj["mass"] = rational_json(rep.micro_mass[l]);
                    levels.push_back(std::move(lj));
                }
                j["levels"] = std::move(levels);
                j["identity"] = "verified";
            } else if (mode_arg == "rate") {
                auto rep = rate_estimate(base, n_list, eps, level_arg);
                j["horizons"] = rep.horizons;
                j["limit"] = rep.limit;
                j["rate"] = rep.rate;
                j["gap"] = rep.gap;
                Json shrink = Json::array();
                for (bool b : rep.gap_shrinking) shrink.push_back(b);
                j["gap_shrinking"] = std::move(shrink);
            } else if (mode_arg == "dominance") {
                auto rep = dominance_trend(base, n_list, eps, level_arg);
                j["horizons"] = rep.horizons;
                Json eq = Json::array(), dec = Json::array();
                for (const auto& r : rep.equilibrium_ratio) eq.push_back(rational_json(r));
                for (const auto& r : rep.decreasing_fraction) dec.push_back(rational_json(r));
                j["equilibrium_ratio"] = std::move(eq);
                j["decreasing_fraction"] = std::move(dec);
            } else {
                throw ValidationError("unknown ldev mode: " + mode_arg);
            }
            emit(j);
        } else if (sub == c_selftest) {
            System z4 = validate_system({1, 2, 3, 0}, {0, 1, 2, 1},
                                        std::vector<int>{0, 3, 2, 1});
            kernel(z4);
            limit_distribution(z4, macro_measure(z4));
            markovianity_check(z4, 3);
            fluctuation_check(z4, uniform_on_labels(z4), 1);
            if (count_classes(2) != 4 || d_max(3) != 1)
                throw IdentityError("selftest census values changed");
            std::map<long, long> parts{{1, 1}, {2, 1}, {3, 4}, {4, 1}, {6, 1}};
            if (entropy_classes(max_decreasing_system(parts)).decreasing.size() != 13)
                throw IdentityError("selftest tableau decreasing count changed");
            Json j;
            j["selftest"] = "ok";
            emit(j);
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const IdentityError& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
