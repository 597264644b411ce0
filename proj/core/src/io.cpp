#include "urel/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "urel/errors.hpp"

namespace urel {

namespace {

using nlohmann::json;

std::vector<std::string> splitTabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return out;
}

std::vector<std::vector<std::string>> readTsv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open '" + file.string() + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(splitTabs(line));
    }
    if (rows.empty()) throw IoError("'" + file.string() + "' is empty (header expected)");
    return rows;
}

WorldTable loadWorldTable(const std::filesystem::path& file, bool probabilistic) {
    auto rows = readTsv(file);
    const auto& header = rows[0];
    if (header.size() < 2 || header[0] != "var" || header[1] != "val")
        throw IoError("world table '" + file.string() + "': expected header var\\tval[\\tprob]");
    WorldTable w;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() < 2) throw IoError("world table '" + file.string() + "': short row");
        if (probabilistic) {
            if (r.size() < 3) throw IoError("world table '" + file.string() + "': missing prob");
            w.addEntry(r[0], Value::parse(r[1]), std::stod(r[2]));
        } else {
            w.addEntry(r[0], Value::parse(r[1]));
        }
    }
    return w;
}

Partition loadPartition(const std::filesystem::path& file, std::size_t tid_arity,
                        std::vector<std::string> covered) {
    auto rows = readTsv(file);
    const auto& header = rows[0];
    std::size_t expected_cols = 1 + tid_arity + covered.size();
    if (header.size() != expected_cols)
        throw IoError("partition '" + file.string() + "': header has " +
                      std::to_string(header.size()) + " columns, manifest expects " +
                      std::to_string(expected_cols));
    USchema schema{covered, tid_arity};
    URelation rel(schema);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() != expected_cols)
            throw IoError("partition '" + file.string() + "': row " + std::to_string(i) +
                          " has wrong arity");
        URow row;
        row.d = WsDescriptor::deserialize(r[0]);
        std::vector<TidAtom> atoms;
        for (std::size_t k = 0; k < tid_arity; ++k) atoms.push_back(TupleId::parseAtom(r[1 + k]));
        row.t = TupleId(std::move(atoms));
        for (std::size_t k = 0; k < covered.size(); ++k)
            row.a.push_back(Value::parse(r[1 + tid_arity + k]));
        rel.addRow(std::move(row));
    }
    rel.canonicalize();
    return Partition{std::move(rel), std::move(covered)};
}

}  // namespace

UDatabase loadDatabase(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw IoError("cannot open '" + (dir / "manifest.json").string() + "'");
    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw IoError("manifest.json: " + std::string(e.what()));
    }

    UDatabase db;
    bool probabilistic = m.value("probabilistic", false);
    db.world = loadWorldTable(dir / m.at("world_file").get<std::string>(), probabilistic);
    db.reduced = m.value("reduced", false);
    db.normalized = m.value("normalized", false);

    for (const auto& jr : m.at("relations")) {
        LogicalRelation rel;
        rel.attrs = jr.at("attrs").get<std::vector<std::string>>();
        for (const auto& jp : jr.at("partitions")) {
            rel.partitions.push_back(loadPartition(
                dir / jp.at("file").get<std::string>(), jp.at("tid_arity").get<std::size_t>(),
                jp.at("covered_attrs").get<std::vector<std::string>>()));
        }
        db.relations.emplace(jr.at("name").get<std::string>(), std::move(rel));
    }
    return db;
}

void saveDatabase(const UDatabase& db, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    json m;
    m["world_file"] = "world.tsv";
    m["probabilistic"] = db.world.probabilistic();
    m["reduced"] = db.reduced;
    m["normalized"] = db.normalized;
    m["relations"] = json::array();

    {
        std::ofstream out(dir / "world.tsv");
        out << "var\tval";
        if (db.world.probabilistic()) out << "\tprob";
        out << "\n";
        char buf[64];
        for (const auto& e : db.world.entries()) {
            out << e.var << '\t' << e.val.toString();
            if (db.world.probabilistic()) {
                std::snprintf(buf, sizeof buf, "%.17g", e.prob);
                out << '\t' << buf;
            }
            out << "\n";
        }
    }

    for (const auto& [name, rel] : db.relations) {
        json jr;
        jr["name"] = name;
        jr["attrs"] = rel.attrs;
        jr["partitions"] = json::array();
        for (std::size_t pi = 0; pi < rel.partitions.size(); ++pi) {
            const Partition& p = rel.partitions[pi];
            std::string file = name + "_p" + std::to_string(pi) + ".tsv";
            json jp;
            jp["file"] = file;
            jp["tid_arity"] = p.rel.schema().tid_arity;
            jp["covered_attrs"] = p.covered_attrs;
            jr["partitions"].push_back(jp);

            std::ofstream out(dir / file);
            out << "d";
            for (std::size_t k = 0; k < p.rel.schema().tid_arity; ++k) out << "\tt" << (k + 1);
            for (const auto& a : p.covered_attrs) out << '\t' << a;
            out << "\n";
            for (const URow& r : p.rel.rows()) {
                out << r.d.serialize();
                for (const auto& atom : r.t.atoms())
                    out << '\t' << atom.tag << ':' << atom.id.toString();
                for (const auto& v : r.a) out << '\t' << v.toString();
                out << "\n";
            }
        }
        m["relations"].push_back(jr);
    }

    std::ofstream out(dir / "manifest.json");
    out << m.dump(2) << "\n";
}

}  // namespace urel
