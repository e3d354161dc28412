#include "evatlas/cli.hpp"

#include "evatlas/compile.hpp"
#include "evatlas/errors.hpp"
#include "evatlas/fixtures.hpp"
#include "evatlas/graph_stats.hpp"
#include "evatlas/json_io.hpp"
#include "evatlas/query.hpp"
#include "serde.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace evatlas {

namespace {

namespace fs = std::filesystem;
using serde::json;

// Card inputs: each path is a card file or a directory scanned (sorted) for
// *.json, so rejection order never depends on filesystem enumeration order.
std::vector<fs::path> collect_card_paths(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& input : inputs) {
        fs::path path(input);
        if (fs::is_directory(path)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".json")
                    found.push_back(entry.path());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(path)) {
            files.push_back(path);
        } else {
            throw ParseError("no such card file or directory: " + input);
        }
    }
    if (files.empty()) throw ParseError("no card files found");
    return files;
}

std::vector<ParsedCard> parse_cards(const std::vector<std::string>& inputs) {
    std::vector<ParsedCard> cards;
    for (const auto& path : collect_card_paths(inputs)) cards.push_back(parse_card_file(path));
    return cards;
}

std::string format_number(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << std::fixed << v;
    return s.str();
}

void render_conflict(std::ostream& out, const ConflictAnnotation& conflict,
                     const std::string& indent) {
    out << indent << "severity: " << to_string(conflict.severity) << "\n";
    for (const auto& witness : conflict.witnesses) {
        out << indent << "witness: " << to_string(witness.type) << " (";
        for (std::size_t i = 0; i < witness.claim_refs.size(); ++i)
            out << (i ? ", " : "") << witness.claim_refs[i];
        out << ") statistic=" << format_number(witness.statistic) << "\n";
    }
}

void render_answer(std::ostream& out, const AnswerObject& ans, const std::string& indent = "") {
    out << indent << "flags:";
    for (Flag f : ans.flags) out << ' ' << to_string(f);
    out << "\n";
    if (ans.theta_hat) {
        out << indent << "theta: " << format_number(*ans.theta_hat);
        if (ans.estimand)
            out << " (" << to_string(ans.estimand->measure.s_canon) << " scale, "
                << ans.estimand->measure.m_type << ")";
        out << "\n";
    }
    if (ans.ci)
        out << indent << "ci: [" << format_number(ans.ci->lower) << ", "
            << format_number(ans.ci->upper) << "]\n";
    if (ans.provenance)
        out << indent << "source: " << ans.provenance->ref << " ("
            << claim_ref(*ans.provenance) << ")\n";
    if (ans.conflict && !ans.conflict->types.empty())
        render_conflict(out, *ans.conflict, indent);
    for (const auto& key : ans.witness_keys) out << indent << "edge: " << key.encode() << "\n";
}

int cmd_compile(const std::vector<std::string>& card_inputs, const std::string& config_path,
                const std::string& out_path, const std::string& ablation, std::size_t jobs,
                std::ostream& out) {
    BuildConfig cfg =
        config_path.empty() ? BuildConfig::defaults() : load_build_config(config_path);
    if (!ablation.empty()) {
        auto mode = parse_ablation_mode(ablation);
        if (!mode) throw ConfigError("unknown ablation mode: " + ablation);
        cfg.ablation = *mode;
    }

    const auto cards = parse_cards(card_inputs);
    CompileOptions options;
    options.jobs = jobs == 0 ? 1 : jobs;
    const Atlas atlas = compile_corpus(cards, cfg, options);
    save_atlas(atlas, out_path);

    out << "cards: " << atlas.report.cards << "\n";
    out << "claims: " << atlas.report.claims_compiled << "/" << atlas.report.claims_seen
        << " compiled\n";
    out << "rejected: " << atlas.report.rejected.size() << "\n";
    out << "edges: " << atlas.edges.size() << "\n";
    out << "digest: " << atlas.build_digest << "\n";
    out << "atlas: " << out_path << "\n";
    return 0;
}

CanonicalHorizonClass parse_tau_or_throw(const std::string& token) {
    auto tau = CanonicalHorizonClass::decode(token);
    if (!tau) throw ConfigError("malformed horizon class (expected sem:bin): " + token);
    return *tau;
}

QuerySpec build_query_spec(const std::string& kind_token, const std::string& x,
                           const std::string& x2, const std::string& m, const std::string& y,
                           const std::string& population, const std::string& contrast,
                           const std::string& tau, const std::string& mfamily,
                           const std::string& subgroup, const std::string& times) {
    auto kind = parse_query_kind(kind_token);
    if (!kind) throw ConfigError("unknown query kind: " + kind_token);

    QuerySpec spec;
    spec.kind = *kind;
    if (!x.empty()) spec.x_id = normalize_token(x);
    if (!x2.empty()) spec.x2_id = normalize_token(x2);
    if (!m.empty()) spec.m_id = normalize_token(m);
    if (!y.empty()) spec.y_id = normalize_token(y);
    if (!subgroup.empty()) spec.subgroup = subgroup;

    if (!population.empty()) {
        // A counterfactual query reads the population as the individual's
        // context; everywhere else it constrains the bucket key.
        if (spec.kind == QueryKind::Cf)
            spec.context["population"] = population;
        else
            spec.constraints.p_bucket = normalize_token(population);
    }
    if (!contrast.empty()) {
        auto c_type = parse_contrast_type(contrast);
        if (!c_type) throw ConfigError("unknown contrast type: " + contrast);
        spec.constraints.c_type = *c_type;
    }
    if (!tau.empty()) spec.constraints.tau_class = parse_tau_or_throw(tau);
    if (!mfamily.empty()) {
        auto family = parse_measure_family(mfamily);
        if (!family) throw ConfigError("unknown measure family: " + mfamily);
        spec.constraints.m_family = *family;
    }
    if (!times.empty()) {
        std::stringstream stream(times);
        std::string token;
        while (std::getline(stream, token, ','))
            if (!token.empty()) spec.time_set.push_back(parse_tau_or_throw(token));
    }
    return spec;
}

int cmd_query(const Atlas& atlas, const QuerySpec& spec, const std::string& format,
              std::ostream& out) {
    const bool machine = format == "machine";
    switch (spec.kind) {
        case QueryKind::Med: {
            MediationAnswer ans = q_med(atlas, spec);
            if (machine) {
                out << mediation_to_json(ans);
            } else {
                out << "total:\n";
                render_answer(out, ans.total, "  ");
                out << "direct:\n";
                render_answer(out, ans.direct, "  ");
                out << "indirect:\n";
                render_answer(out, ans.indirect, "  ");
            }
            return 0;
        }
        case QueryKind::Traj: {
            auto points = q_traj(atlas, spec);
            if (machine) {
                out << trajectory_to_json(points);
            } else {
                for (const auto& point : points) {
                    out << "tau " << point.tau.encode() << ":\n";
                    render_answer(out, point.answer, "  ");
                }
            }
            return 0;
        }
        default: {
            AnswerObject ans;
            if (spec.kind == QueryKind::Do) ans = q_do(atlas, spec);
            else if (spec.kind == QueryKind::Joint) ans = q_joint(atlas, spec);
            else if (spec.kind == QueryKind::Cf) ans = q_cf(atlas, spec);
            else ans = q_cate(atlas, spec);
            if (machine)
                out << answer_to_json(ans);
            else
                render_answer(out, ans);
            return 0;
        }
    }
}

int cmd_stats(const Atlas& atlas, std::size_t top_k, const std::string& format,
              std::ostream& out) {
    const GraphStats stats = graph_stats(atlas);
    const HubRanking hubs = hub_ranking(atlas, top_k);

    if (format == "machine") {
        json j;
        j["nodes"] = stats.node_count;
        j["unique_edges"] = stats.unique_edge_count;
        j["pure_interventions"] = stats.pure_intervention_count;
        j["pure_outcomes"] = stats.pure_outcome_count;
        j["mediators"] = stats.mediator_count;
        j["wcc_count"] = stats.wcc_count;
        j["largest_wcc"] = stats.largest_wcc_size;
        j["reachable_pairs"] = stats.reachable_pair_count;
        j["avg_path_length"] = stats.avg_path_length;
        j["diameter"] = stats.diameter;
        j["density"] = stats.density;
        json hub_json = json::object();
        hub_json["interventions"] = json::array();
        for (const auto& [node, degree] : hubs.interventions)
            hub_json["interventions"].push_back({{"node", node}, {"degree", degree}});
        hub_json["outcomes"] = json::array();
        for (const auto& [node, degree] : hubs.outcomes)
            hub_json["outcomes"].push_back({{"node", node}, {"degree", degree}});
        j["hubs"] = std::move(hub_json);
        out << j.dump(2) << "\n";
        return 0;
    }

    out << "nodes: " << stats.node_count << "\n";
    out << "unique edges: " << stats.unique_edge_count << "\n";
    out << "pure interventions: " << stats.pure_intervention_count << "\n";
    out << "pure outcomes: " << stats.pure_outcome_count << "\n";
    out << "mediators: " << stats.mediator_count << "\n";
    out << "weakly connected components: " << stats.wcc_count << " (largest "
        << stats.largest_wcc_size << ")\n";
    out << "reachable pairs: " << stats.reachable_pair_count << "\n";
    out << "avg path length: " << format_number(stats.avg_path_length) << "\n";
    out << "diameter: " << stats.diameter << "\n";
    out << "density: " << format_number(stats.density) << "\n";
    out << "top interventions:";
    for (const auto& [node, degree] : hubs.interventions)
        out << ' ' << node << '(' << degree << ')';
    out << "\n";
    out << "top outcomes:";
    for (const auto& [node, degree] : hubs.outcomes) out << ' ' << node << '(' << degree << ')';
    out << "\n";
    return 0;
}

int cmd_conflicts(const Atlas& atlas, const std::string& format, std::ostream& out) {
    if (format == "machine") {
        json j = json::array();
        for (const auto& edge : atlas.edges) {
            if (edge.conflict.types.empty()) continue;
            json entry;
            entry["key"] = edge.key.encode();
            entry["conflict"] = serde::conflict_to_json(edge.conflict);
            j.push_back(std::move(entry));
        }
        out << j.dump(2) << "\n";
        return 0;
    }

    std::size_t found = 0;
    for (const auto& edge : atlas.edges) {
        if (edge.conflict.types.empty()) continue;
        ++found;
        out << edge.key.encode() << "\n";
        out << "  types:";
        for (ConflictType t : edge.conflict.types) out << ' ' << to_string(t);
        out << "\n";
        render_conflict(out, edge.conflict, "  ");
    }
    out << "conflicted edges: " << found << " of " << atlas.edges.size() << "\n";
    return 0;
}

int cmd_validate(const std::vector<std::string>& card_inputs, std::ostream& out) {
    const auto cards = parse_cards(card_inputs);
    std::size_t bad = 0;
    for (const auto& parsed : cards) {
        std::vector<std::pair<std::string, std::string>> problems;
        for (const auto& v : parsed.violations) problems.emplace_back(v.field, v.rule);
        for (const auto& object : parsed.objects)
            for (const auto& v : validate_evidence_object(object))
                problems.emplace_back("effects[" +
                                          std::to_string(object.provenance.effect_index) +
                                          "]." + v.field,
                                      v.rule);
        if (problems.empty()) continue;
        ++bad;
        const std::string label =
            parsed.card.card_id.empty() ? "(unidentified card)" : parsed.card.card_id;
        for (const auto& [field, rule] : problems)
            out << label << ": " << field << ": " << rule << "\n";
    }
    out << (cards.size() - bad) << "/" << cards.size() << " cards valid\n";
    return bad == 0 ? 0 : 2;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"causal evidence atlas compiler and query engine"};
    app.require_subcommand(1);

    // compile
    auto* compile = app.add_subcommand("compile", "compile evidence cards into an atlas");
    std::vector<std::string> compile_cards;
    std::string compile_config;
    std::string compile_out;
    std::string compile_ablation;
    std::size_t compile_jobs = 1;
    compile->add_option("--cards", compile_cards, "card files or directories")->required();
    compile->add_option("--config", compile_config, "build config JSON");
    compile->add_option("--out", compile_out, "output atlas path")->required();
    compile->add_option("--ablation", compile_ablation,
                        "none|no_canonical|no_align_tau|weak_key");
    compile->add_option("--jobs", compile_jobs, "canonicalization worker count");

    // query
    auto* query = app.add_subcommand("query", "run a typed causal query against an atlas");
    std::string query_kind, query_atlas, query_x, query_x2, query_m, query_y;
    std::string query_population, query_contrast, query_tau, query_mfamily;
    std::string query_subgroup, query_times, query_format = "text";
    query->add_option("kind", query_kind, "do|med|joint|cf|cate|traj")->required();
    query->add_option("--atlas", query_atlas, "compiled atlas JSON")->required();
    query->add_option("--x", query_x, "intervention token");
    query->add_option("--x2", query_x2, "second intervention token (joint)");
    query->add_option("--m", query_m, "mediator token (med)");
    query->add_option("--y", query_y, "outcome token");
    query->add_option("--population", query_population,
                      "population bucket (context for cf, key constraint otherwise)");
    query->add_option("--contrast", query_contrast, "contrast type constraint");
    query->add_option("--tau", query_tau, "horizon class constraint, e.g. fixed:6");
    query->add_option("--mfamily", query_mfamily, "measure family constraint");
    query->add_option("--z", query_subgroup, "subgroup token (cate)");
    query->add_option("--times", query_times, "comma-separated horizon classes (traj)");
    query->add_option("--format", query_format, "text|machine")
        ->check(CLI::IsMember({"text", "machine"}));

    // stats
    auto* stats = app.add_subcommand("stats", "print atlas graph statistics");
    std::string stats_atlas, stats_format = "text";
    std::size_t stats_top = 5;
    stats->add_option("--atlas", stats_atlas, "compiled atlas JSON")->required();
    stats->add_option("--top", stats_top, "hub list length");
    stats->add_option("--format", stats_format, "text|machine")
        ->check(CLI::IsMember({"text", "machine"}));

    // conflicts
    auto* conflicts = app.add_subcommand("conflicts", "list conflict-annotated edges");
    std::string conflicts_atlas, conflicts_format = "text";
    conflicts->add_option("--atlas", conflicts_atlas, "compiled atlas JSON")->required();
    conflicts->add_option("--format", conflicts_format, "text|machine")
        ->check(CLI::IsMember({"text", "machine"}));

    // validate
    auto* validate = app.add_subcommand("validate", "check cards against the input contract");
    std::vector<std::string> validate_cards;
    validate->add_option("--cards", validate_cards, "card files or directories")->required();

    // fixtures
    auto* fixtures = app.add_subcommand("fixtures", "emit the reference fixture corpus");
    std::uint64_t fixtures_seed = 0;
    std::string fixtures_out;
    fixtures->add_option("--seed", fixtures_seed, "corpus seed")->required();
    fixtures->add_option("--out", fixtures_out, "output directory")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("evatlas");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (compile->parsed())
            return cmd_compile(compile_cards, compile_config, compile_out, compile_ablation,
                               compile_jobs, out);
        if (query->parsed()) {
            const Atlas atlas = load_atlas(query_atlas);
            const QuerySpec spec =
                build_query_spec(query_kind, query_x, query_x2, query_m, query_y,
                                 query_population, query_contrast, query_tau, query_mfamily,
                                 query_subgroup, query_times);
            return cmd_query(atlas, spec, query_format, out);
        }
        if (stats->parsed()) return cmd_stats(load_atlas(stats_atlas), stats_top, stats_format, out);
        if (conflicts->parsed())
            return cmd_conflicts(load_atlas(conflicts_atlas), conflicts_format, out);
        if (validate->parsed()) return cmd_validate(validate_cards, out);
        if (fixtures->parsed()) {
            emit_fixtures(fixtures_seed, fixtures_out);
            out << "fixtures written to " << fixtures_out << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace evatlas
