#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "urel/datagen.hpp"
#include "urel/errors.hpp"
#include "urel/exec.hpp"
#include "urel/io.hpp"
#include "urel/normalizer.hpp"
#include "urel/optimizer.hpp"
#include "urel/parser.hpp"
#include "urel/planner.hpp"
#include "urel/worlds.hpp"

namespace {

using namespace urel;

std::string readQueryArg(const std::string& text, const std::string& file) {
    if (!text.empty()) return text;
    std::ifstream in(file);
    if (!in) throw IoError("cannot open query file '" + file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void printPlain(const PlainRelation& r, std::ostream& out) {
    for (std::size_t i = 0; i < r.attrs.size(); ++i)
        out << (i ? "\t" : "") << r.attrs[i];
    out << "\n";
    for (const auto& row : r.rows) {  // set iteration is already sorted
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "\t" : "") << row[i].toString();
        out << "\n";
    }
}

void printURelation(const URelation& u, std::ostream& out) {
    out << "d";
    for (std::size_t i = 0; i < u.schema().tid_arity; ++i) out << "\tt" << i + 1;
    for (const auto& a : u.schema().attrs) out << "\t" << a;
    out << "\n";
    for (const URow& r : u.rows()) {
        out << r.d.serialize();
        for (const TidAtom& a : r.t.atoms()) out << "\t" << a.tag << ":" << a.id.toString();
        for (const Value& v : r.a) out << "\t" << v.toString();
        out << "\n";
    }
}

bool samePlainRows(const PlainRelation& a, const PlainRelation& b) {
    return a.rows == b.rows;
}

int cmdValidate(const std::string& dir) {
    UDatabase db = loadDatabase(dir);
    auto violations = validate(db);
    if (violations.empty()) {
        std::cout << "valid\n";
        return 0;
    }
    for (const auto& v : violations) std::cerr << v.message << "\n";
    return 2;
}

int cmdQuery(const std::string& dir, const std::string& text, const std::string& file,
             bool explain, bool oracle) {
    UDatabase db = loadDatabase(dir);
    if (!db.reduced) db = reduce(db);
    LogicalPtr q = parseQuery(readQueryArg(text, file));
    bool poss = q->kind == LogicalNode::Kind::Poss;
    LogicalPtr body = poss ? q->children[0] : q;

    PlanPtr plan = optimize(planQuery(body, db));
    if (explain) {
        if (poss) std::cout << "poss\n" << explainPlan(plan);
        else std::cout << explainPlan(plan);
    }
    URelation result = evaluate(plan, db);
    if (poss) printPlain(opPoss(result), std::cout);
    else printURelation(result, std::cout);

    if (oracle) {
        PlainRelation expected = possOracle(q, db);
        if (samePlainRows(opPoss(result), expected)) {
            std::cout << "MATCH\n";
        } else {
            std::cout << "MISMATCH\n";
            return 2;
        }
    }
    return 0;
}

int cmdCertain(const std::string& dir, const std::string& text, const std::string& file,
               std::size_t guard, bool oracle) {
    UDatabase db = loadDatabase(dir);
    LogicalPtr q = parseQuery(readQueryArg(text, file));
    PlainRelation result = certainAnswersForQuery(q, db, guard);
    printPlain(result, std::cout);
    if (oracle) {
        PlainRelation expected = certainOracle(q, db);
        if (samePlainRows(result, expected)) {
            std::cout << "MATCH\n";
        } else {
            std::cout << "MISMATCH\n";
            return 2;
        }
    }
    return 0;
}

int cmdWorlds(const std::string& dir, std::size_t limit, const std::string& world) {
    UDatabase db = loadDatabase(dir);
    if (!world.empty()) {
        WsDescriptor d = WsDescriptor::deserialize(world);
        TotalValuation f;
        for (const auto& [var, val] : d.assignments()) f[var] = val;
        for (const VariableId& v : db.world.variables())
            if (!f.count(v))
                throw InvalidParameter("world spec leaves variable '" + v + "' unassigned");
        PlainDatabase w = instantiate(db, f);
        for (const auto& [name, rel] : w.relations) {
            std::cout << "# " << name << "\n";
            printPlain(rel, std::cout);
        }
        return 0;
    }
    for (const TotalValuation& f : enumerateWorlds(db.world, limit)) {
        bool first = true;
        for (const auto& [var, val] : f) {
            std::cout << (first ? "" : ";") << var << "=" << val.toString();
            first = false;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmdStats(const std::string& dir) {
    UDatabase db = loadDatabase(dir);
    GenStats s = stats(db);
    std::cout << "worlds_log10\t" << s.worlds_log10 << "\n";
    std::cout << "max_rng\t" << s.max_rng << "\n";
    std::cout << "total_rows\t" << s.total_rows << "\n";
    for (const auto& [dfc, n] : s.variables_by_dfc)
        std::cout << "variables_dfc_" << dfc << "\t" << n << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"U-relational uncertain database engine"};
    app.require_subcommand(1);

    std::string db_dir, out_dir, text, file, world_spec;
    bool explain = false, oracle = false;
    std::size_t guard = urel::kDefaultNormalizeGuard;
    std::size_t limit = urel::kDefaultWorldLimit;
    urel::GenParams params;

    auto* validate_cmd = app.add_subcommand("validate", "check a database directory");
    validate_cmd->add_option("dir", db_dir, "database directory")->required();

    auto* query_cmd = app.add_subcommand("query", "evaluate a query (poss semantics)");
    query_cmd->add_option("--db", db_dir)->required();
    auto* qt = query_cmd->add_option("--text", text, "query text");
    query_cmd->add_option("--file", file, "query file")->excludes(qt);
    query_cmd->add_flag("--explain", explain, "print the optimized plan");
    query_cmd->add_flag("--oracle", oracle, "cross-check against the worlds oracle");

    auto* certain_cmd = app.add_subcommand("certain", "certain answers of a query");
    certain_cmd->add_option("--db", db_dir)->required();
    auto* ct = certain_cmd->add_option("--text", text, "query text");
    certain_cmd->add_option("--file", file, "query file")->excludes(ct);
    certain_cmd->add_option("--guard", guard, "normalization output guard");
    certain_cmd->add_flag("--oracle", oracle, "cross-check against the worlds oracle");

    auto* reduce_cmd = app.add_subcommand("reduce", "remove uncompletable rows");
    reduce_cmd->add_option("--db", db_dir)->required();
    reduce_cmd->add_option("--out", out_dir)->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "fuse co-occurring variables");
    normalize_cmd->add_option("--db", db_dir)->required();
    normalize_cmd->add_option("--out", out_dir)->required();
    normalize_cmd->add_option("--guard", guard, "output row guard");

    auto* generate_cmd = app.add_subcommand("generate", "generate an uncertain database");
    generate_cmd->add_option("--scale", params.s);
    generate_cmd->add_option("--uncertainty", params.x);
    generate_cmd->add_option("--correlation", params.z);
    generate_cmd->add_option("--max-alts", params.m);
    generate_cmd->add_option("--combo-prob", params.p);
    generate_cmd->add_option("--max-dfc", params.k);
    generate_cmd->add_option("--seed", params.seed);
    generate_cmd->add_option("--out", out_dir)->required();

    auto* stats_cmd = app.add_subcommand("stats", "world/row statistics");
    stats_cmd->add_option("--db", db_dir)->required();

    auto* worlds_cmd = app.add_subcommand("worlds", "enumerate or instantiate worlds");
    worlds_cmd->add_option("--db", db_dir)->required();
    worlds_cmd->add_option("--limit", limit, "max worlds to enumerate");
    worlds_cmd->add_option("--world", world_spec, "valuation var=val;... to instantiate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (validate_cmd->parsed()) return cmdValidate(db_dir);
        if (query_cmd->parsed()) {
            if (text.empty() && file.empty())
                throw urel::InvalidParameter("one of --text or --file is required");
            return cmdQuery(db_dir, text, file, explain, oracle);
        }
        if (certain_cmd->parsed()) {
            if (text.empty() && file.empty())
                throw urel::InvalidParameter("one of --text or --file is required");
            return cmdCertain(db_dir, text, file, guard, oracle);
        }
        if (reduce_cmd->parsed()) {
            urel::saveDatabase(urel::reduce(urel::loadDatabase(db_dir)), out_dir);
            return 0;
        }
        if (normalize_cmd->parsed()) {
            urel::saveDatabase(urel::normalize(urel::loadDatabase(db_dir), guard), out_dir);
            return 0;
        }
        if (generate_cmd->parsed()) {
            urel::UDatabase db = urel::generate(params);
            urel::saveDatabase(db, out_dir);
            for (const auto& [name, query] : urel::sampleQueries()) {
                std::ofstream qf(std::filesystem::path(out_dir) / name);
                qf << query;
            }
            urel::GenStats s = urel::stats(db);
            std::cerr << "generated: worlds_log10=" << s.worlds_log10
                      << " max_rng=" << s.max_rng << " rows=" << s.total_rows << "\n";
            return 0;
        }
        if (stats_cmd->parsed()) return cmdStats(db_dir);
        if (worlds_cmd->parsed()) return cmdWorlds(db_dir, limit, world_spec);
    } catch (const urel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == urel::Error::Code::Limit ? 3 : 2;
    }
    return 1;
}
