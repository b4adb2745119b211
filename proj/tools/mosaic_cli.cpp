#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mosaic/cacti.hpp"
#include "mosaic/cobar.hpp"
#include "mosaic/graphs.hpp"
#include "mosaic/lie.hpp"
#include "mosaic/operads.hpp"
#include "mosaic/parallel.hpp"
#include "mosaic/series.hpp"
#include "mosaic/trees.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mosaic;

namespace {

constexpr const char* kVersion = "1.0.0";

// Convention choices in force; cached records are keyed on these, so
// changing a convention invalidates the cache.
json manifest() {
    return json{{"orientation", "edge-order-odd"},
                {"tree_flip_sign", "suspension-twisted"},
                {"pois1_bracket", "skew"},
                {"icg_external_contraction", "outdeg-1-connected"},
                {"lie_odd_dims", "arcsin-coefficients"},
                {"todd_relations", "five-distinct-indices"},
                {"composition", "left-to-right"}};
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

struct Cache {
    fs::path dir;
    bool enabled = true;

    fs::path path_for(const std::string& sub, const std::string& key_hash) const {
        return dir / (sub + "-" + key_hash + ".json");
    }

    std::optional<std::string> load(const fs::path& p) const {
        if (!enabled || !fs::exists(p)) return std::nullopt;
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    void store(const fs::path& p, const std::string& payload) const {
        if (!enabled) return;
        fs::create_directories(dir);
        fs::path tmp = p;
        tmp += ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary);
            out << payload;
        }
        fs::rename(tmp, p);  // atomic on the same filesystem
    }
};

json tree_to_json(const trees::PlanarTree& t) {
    if (t.is_leaf()) return t.label;
    json arr = json::array();
    for (auto& c : t.children) arr.push_back(tree_to_json(c));
    return arr;
}

json graph_to_json(const graphs::DirectedGraph& g) {
    json edges = json::array();
    for (auto& [s, t] : g.edges) edges.push_back(json::array({s, t}));
    return json{{"ext", g.n_ext}, {"int", g.n_int}, {"edges", edges}};
}

json int_vector(const std::vector<int>& v) {
    json a = json::array();
    for (int x : v) a.push_back(x);
    return a;
}

json bigint_vector(const std::vector<Int>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

// Runs the computation (unless cached) and prints the full record.
int emit(const Cache& cache, const std::string& sub, const json& params,
         const std::function<std::pair<json, int>()>& compute) {
    json key{{"subcommand", sub}, {"params", params}, {"version", kVersion},
             {"manifest", manifest()}};
    std::string key_hash = hex64(fnv1a(key.dump()));
    fs::path p = cache.path_for(sub, key_hash);
    if (auto hit = cache.load(p)) {
        std::cout << *hit;
        json doc = json::parse(*hit);
        return doc.value("exit_code", 0);
    }
    auto [result, code] = compute();
    json record{{"subcommand", sub},   {"params", params},
                {"version", kVersion}, {"manifest", manifest()},
                {"cache_key", key_hash}, {"result", result},
                {"exit_code", code}};
    std::string payload = record.dump(2) + "\n";
    cache.store(p, payload);
    std::cout << payload;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mosaic: exact computations for the mosaic operad, its graph "
                 "complexes and the associated Lie algebras"};
    app.require_subcommand(1);

    int n = 4, max_degree = 3, max_internal = 4, d_dim = 2, jobs = 1;
    std::string cache_dir, format = "json", operad = "as", preset = "LieOdd";
    std::string presentation_file, cacti_word;
    bool list_cells = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--cache-dir", cache_dir, "cache directory");
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--format", format, "output format (json)");
        return cmd;
    };

    auto* c_cells = add_common(app.add_subcommand("cells", "mosaic cell counts"));
    c_cells->add_option("--n", n, "arity")->required();
    c_cells->add_flag("--list", list_cells, "include representative trees");

    auto* c_hm = add_common(app.add_subcommand("homology-mosaic", "homology of the mosaic cell complex"));
    c_hm->add_option("--n", n, "arity")->required();

    auto* c_hc = add_common(app.add_subcommand("homology-cobar", "homology of the cobar complex"));
    c_hc->add_option("--n", n, "arity")->required();

    auto* c_hi = add_common(app.add_subcommand("homology-icg", "homology of the oriented-odd ICG complex"));
    c_hi->add_option("--n", n, "number of external vertices")->required();
    c_hi->add_option("--max-internal", max_internal, "internal vertex bound");
    c_hi->add_option("--d", d_dim, "oriented graph dimension (only 2)");

    auto* c_inv = add_common(app.add_subcommand("inv-dims", "invariant dimension of an operad involution"));
    c_inv->add_option("--operad", operad, "as | pois1")->required();
    c_inv->add_option("--n", n, "arity")->required();

    auto* c_poin = add_common(app.add_subcommand("poincare", "Poincare polynomial coefficients"));
    c_poin->add_option("--n", n, "arity")->required();

    auto* c_lie = add_common(app.add_subcommand("lie-dims", "dimensions of the odd Lie operad"));
    c_lie->add_option("--n", n, "largest (odd) arity")->required();

    auto* c_xi = add_common(app.add_subcommand("xi-rank", "rank of the map into the Drinfeld-Kohno algebra"));
    c_xi->add_option("--n", n, "number of strands")->required();
    c_xi->add_option("--max-degree", max_degree, "word-length bound");

    auto* c_kos = add_common(app.add_subcommand("koszul-check", "numerical Koszulness witness"));
    c_kos->add_option("--n", n, "index")->required();
    c_kos->add_option("--max-degree", max_degree, "truncation order");

    auto* c_mc = add_common(app.add_subcommand("mc-leading", "leading term of the orientation Maurer-Cartan element"));
    c_mc->add_option("--d", d_dim, "graph complex dimension (only 2)");

    auto* c_cac = add_common(app.add_subcommand("cacti-verify", "cacti group relations as permutation identities"));
    c_cac->add_option("--n", n, "number of strands")->required();
    c_cac->add_option("--word", cacti_word, "word as comma-separated p-q pairs; reports purity");

    auto* c_ser = add_common(app.add_subcommand("series-check", "generating series coherence"));
    c_ser->add_option("--n", n, "largest arity checked");

    auto* c_rk = add_common(app.add_subcommand("relation-kernel", "kernel of a presentation's evaluation into As"));
    c_rk->add_option("--preset", preset, "Com|Lie|As|Pois1|ComZ2|LieOdd|Pois1Odd|AsZ2");
    c_rk->add_option("--presentation-file", presentation_file, "JSON presentation");
    c_rk->add_option("--n", n, "arity")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        json err{{"error", "usage"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }

    util::set_jobs(jobs);
    if (format != "json") {
        std::cout << json{{"error", "usage"}, {"message", "only --format json is supported"}}.dump(2)
                  << "\n";
        return 1;
    }

    Cache cache;
    if (!cache_dir.empty())
        cache.dir = cache_dir;
    else if (const char* env = std::getenv("MOSAIC_CACHE_DIR"))
        cache.dir = env;
    else
        cache.dir = fs::path(".mosaic-cache");

    try {
        if (c_cells->parsed()) {
            json params{{"n", n}, {"list", list_cells}};
            return emit(cache, "cells", params, [&]() {
                auto cells = trees::mosaic_classes(n);
                std::vector<int> counts(n - 1, 0);
                json lists = json::array();
                for (int k = 0; k <= n - 2; ++k) lists.push_back(json::array());
                for (auto& c : cells) {
                    int k = n - 1 - c.internal_vertices;
                    counts[k]++;
                    if (list_cells) lists[k].push_back(tree_to_json(c.representative));
                }
                long chi = 0;
                for (int k = 0; k <= n - 2; ++k) chi += (k % 2 ? -counts[k] : counts[k]);
                json result{{"counts_by_degree", int_vector(counts)},
                            {"total", (int)cells.size()},
                            {"euler_characteristic", chi}};
                if (list_cells) result["cells"] = lists;
                return std::pair{result, 0};
            });
        }
        if (c_hm->parsed()) {
            return emit(cache, "homology-mosaic", json{{"n", n}}, [&]() {
                auto cc = trees::mosaic_chain_complex(n);
                json result{{"ranks", int_vector(cc.homology_ranks())},
                            {"dims", int_vector(cc.graded_dims())},
                            {"d_squared_zero", cc.boundary_squares_to_zero()}};
                return std::pair{result, 0};
            });
        }
        if (c_hc->parsed()) {
            return emit(cache, "homology-cobar", json{{"n", n}}, [&]() {
                auto cc = operads::cobar_complex(n);
                json result{{"ranks", int_vector(cc.homology_ranks())},
                            {"dims", int_vector(cc.graded_dims())},
                            {"d_squared_zero", cc.boundary_squares_to_zero()}};
                return std::pair{result, 0};
            });
        }
        if (c_hi->parsed()) {
            if (d_dim != 2) throw CLI::ValidationError("--d", "only d = 2 is implemented");
            json params{{"n", n}, {"max_internal", max_internal}};
            return emit(cache, "homology-icg", params, [&]() {
                auto h = graphs::icg_homology(n, max_internal);
                auto cc = graphs::icg_complex(n, max_internal);
                json result{{"ranks_by_internal_count", int_vector(h)},
                            {"dims_by_internal_count", int_vector(cc.graded_dims())},
                            {"certified_up_to", max_internal - 1},
                            {"d_squared_zero", cc.boundary_squares_to_zero()}};
                return std::pair{result, 0};
            });
        }
        if (c_inv->parsed()) {
            json params{{"operad", operad}, {"n", n}};
            return emit(cache, "inv-dims", params, [&]() {
                int dim;
                if (operad == "as")
                    dim = operads::invariant_dimension(operads::InvariantTarget::As,
                                                       operads::TauVariant::SignedFlip, n);
                else if (operad == "pois1")
                    dim = operads::invariant_dimension(operads::InvariantTarget::Pois1,
                                                       operads::TauVariant::Flip, n);
                else
                    throw CLI::ValidationError("--operad", "expected as or pois1");
                return std::pair{json{{"dim", dim}}, 0};
            });
        }
        if (c_poin->parsed()) {
            return emit(cache, "poincare", json{{"n", n}}, [&]() {
                json coeffs = json::array();
                for (auto& c : series::poincare_polynomial(n)) coeffs.push_back(c.get_str());
                return std::pair{json{{"coeffs", coeffs}}, 0};
            });
        }
        if (c_lie->parsed()) {
            return emit(cache, "lie-dims", json{{"n", n}}, [&]() {
                json dims = json::array();
                for (auto& [arity, dim] : series::lie_odd_dims(n))
                    dims.push_back(json::array({arity, dim.get_str()}));
                return std::pair{json{{"dims", dims}}, 0};
            });
        }
        if (c_xi->parsed()) {
            json params{{"n", n}, {"max_degree", max_degree}};
            return emit(cache, "xi-rank", params, [&]() {
                lie::XiMap xi(n, max_degree);
                std::vector<int> ranks;
                std::vector<Int> dims;
                bool injective = xi.relations_map_into_ideal();
                for (int m = 1; m <= max_degree; ++m) {
                    ranks.push_back(xi.rank(m));
                    dims.push_back(xi.source_dim(m));
                    if (Int((long)ranks.back()) != dims.back()) injective = false;
                }
                json result{{"ranks", int_vector(ranks)},
                            {"source_dims", bigint_vector(dims)},
                            {"injective", injective}};
                return std::pair{result, 0};
            });
        }
        if (c_kos->parsed()) {
            json params{{"n", n}, {"max_degree", max_degree}};
            return emit(cache, "koszul-check", params, [&]() {
                auto rep = lie::koszul_check(n, max_degree);
                json result{{"pass", rep.pass},
                            {"lie_dims", bigint_vector(rep.lie_dims)},
                            {"envelope_dims", bigint_vector(rep.envelope_dims)}};
                return std::pair{result, rep.pass ? 0 : 2};
            });
        }
        if (c_mc->parsed()) {
            if (d_dim != 2) throw CLI::ValidationError("--d", "only d = 2 is implemented");
            return emit(cache, "mc-leading", json::object(), [&]() {
                auto rep = graphs::solve_mc_leading();
                json kernel = json::array();
                for (auto& v : rep.kernel) {
                    json vec = json::array();
                    for (auto& [i, c] : v)
                        vec.push_back(json::array({rep.domain_ids[i], to_string(c)}));
                    kernel.push_back(vec);
                }
                json result{{"domain_dim", rep.domain_dim},
                            {"codomain_dim", rep.codomain_dim},
                            {"kernel_dim", (int)rep.kernel.size()},
                            {"kernel", kernel},
                            {"shape_found", rep.found_shape}};
                if (rep.found_shape) {
                    result["coefficients"] = json{{"sources", to_string(rep.c_sources)},
                                                  {"sinks", to_string(rep.c_sinks)},
                                                  {"mixed", to_string(rep.c_mixed)}};
                    result["graphs"] = json{{"sources", rep.id_sources},
                                            {"sinks", rep.id_sinks},
                                            {"mixed", rep.id_mixed}};
                    auto both_sources = graphs::canonical_form(graphs::DirectedGraph{
                        0, 4, {{3, 1}, {3, 2}, {4, 1}, {4, 2}, {1, 2}}});
                    auto both_sinks = graphs::canonical_form(graphs::DirectedGraph{
                        0, 4, {{1, 3}, {2, 3}, {1, 4}, {2, 4}, {1, 2}}});
                    auto one_each = graphs::canonical_form(graphs::DirectedGraph{
                        0, 4, {{4, 1}, {4, 2}, {1, 3}, {2, 3}, {1, 2}}});
                    result["graphs_json"] = json{{"sources", graph_to_json(both_sources.graph)},
                                                 {"sinks", graph_to_json(both_sinks.graph)},
                                                 {"mixed", graph_to_json(one_each.graph)}};
                }
                return std::pair{result, 0};
            });
        }
        if (c_cac->parsed()) {
            json params{{"n", n}, {"word", cacti_word}};
            return emit(cache, "cacti-verify", params, [&]() {
                auto rep = cacti::verify_cacti_relations(n);
                bool commutor_ok = true;
                for (int p = 1; p < n; ++p)
                    for (int q = p + 1; q <= n; ++q)
                        commutor_ok = commutor_ok && cacti::commutor_factorization_check(n, p, q);
                json result{{"relations_checked", rep.checked},
                            {"violations", rep.violations},
                            {"commutor_factorization", commutor_ok},
                            {"pass", rep.ok() && commutor_ok}};
                if (!cacti_word.empty()) {
                    cacti::CactiWord w;
                    std::stringstream ss(cacti_word);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        auto dash = item.find('-');
                        if (dash == std::string::npos)
                            throw CLI::ValidationError("--word", "expected p-q pairs");
                        w.letters.emplace_back(std::stoi(item.substr(0, dash)),
                                               std::stoi(item.substr(dash + 1)));
                    }
                    result["word_is_pure"] = cacti::is_pure(w, n);
                }
                return std::pair{result, (rep.ok() && commutor_ok) ? 0 : 2};
            });
        }
        if (c_ser->parsed()) {
            json params{{"n", n}};
            return emit(cache, "series-check", params, [&]() {
                bool pass = series::egf_cross_check(std::min(n, 8));
                return std::pair{json{{"pass", pass}}, pass ? 0 : 2};
            });
        }
        if (c_rk->parsed()) {
            json params{{"preset", preset}, {"file", presentation_file}, {"n", n}};
            return emit(cache, "relation-kernel", params, [&]() {
                operads::Presentation p;
                if (!presentation_file.empty()) {
                    std::ifstream in(presentation_file);
                    if (!in) throw std::runtime_error("cannot open " + presentation_file);
                    json doc = json::parse(in);
                    p = operads::presentation_from_json(doc);
                } else {
                    p = operads::preset_by_name(preset);
                }
                auto res = operads::relation_kernel_as(
                    p.generators, operads::standard_as_assignment(), n);
                json kernel = json::array();
                for (auto& v : res.kernel) {
                    json vec = json::array();
                    for (auto& [i, c] : v)
                        vec.push_back(json::array(
                            {operads::term_string(res.basis[i], p.generators), to_string(c)}));
                    kernel.push_back(vec);
                }
                json result{{"basis_size", (int)res.basis.size()},
                            {"kernel_dim", (int)res.kernel.size()},
                            {"image_rank", res.image_rank},
                            {"kernel", kernel}};
                return std::pair{result, 0};
            });
        }
    } catch (const CLI::ValidationError& e) {
        std::cout << json{{"error", "usage"}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", "failure"}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    }
    std::cout << json{{"error", "usage"}, {"message", "no subcommand"}}.dump(2) << "\n";
    return 1;
}
