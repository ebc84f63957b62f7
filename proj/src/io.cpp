#include "hypermatch/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hypermatch {

namespace {

[[noreturn]] void syntax(int line, const std::string& msg) {
    fail(errc::syntax_error, "line " + std::to_string(line) + ": " + msg);
}

} // namespace

Hypergraph parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int k = -1, n = -1;
    std::vector<Edge> edges;
    std::map<Vertex, std::string> labels;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#')
            continue;
        if (word == "k") {
            if (k != -1)
                syntax(lineno, "duplicate k line");
            if (!(ls >> k))
                syntax(lineno, "expected integer after 'k'");
        } else if (word == "vertices") {
            if (n != -1)
                syntax(lineno, "duplicate vertices line");
            if (!(ls >> n))
                syntax(lineno, "expected integer after 'vertices'");
        } else if (word == "edge") {
            if (k < 0)
                syntax(lineno, "edge before k line");
            if (n < 0)
                syntax(lineno, "edge before vertices line");
            Edge e;
            int v;
            while (ls >> v)
                e.push_back(v);
            if (static_cast<int>(e.size()) != k)
                syntax(lineno, "edge lists " + std::to_string(e.size()) +
                                   " vertices, expected " + std::to_string(k));
            edges.push_back(std::move(e));
        } else if (word == "label") {
            int v;
            std::string name;
            if (!(ls >> v >> name))
                syntax(lineno, "expected 'label <vertex> <name>'");
            labels[v] = name;
        } else {
            syntax(lineno, "unknown directive '" + word + "'");
        }
        std::string trailing;
        if (word != "label" && (ls >> trailing))
            syntax(lineno, "trailing token '" + trailing + "'");
    }
    if (k < 0)
        fail(errc::syntax_error, "missing k line");
    if (n < 0)
        fail(errc::syntax_error, "missing vertices line");
    return new_hypergraph(k, n, std::move(edges), std::move(labels));
}

std::string serialize(const Hypergraph& h) {
    std::ostringstream out;
    out << "k " << h.k << "\n";
    out << "vertices " << h.n << "\n";
    for (const Edge& e : h.edges) {
        out << "edge";
        for (Vertex v : e)
            out << ' ' << v;
        out << "\n";
    }
    for (const auto& [v, name] : h.labels)
        out << "label " << v << ' ' << name << "\n";
    return out.str();
}

Hypergraph parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::syntax_error, e.what());
    }
    if (!j.contains("k") || !j.contains("n") || !j.contains("edges"))
        fail(errc::syntax_error, "json requires fields k, n, edges");
    std::vector<Edge> edges;
    for (const auto& je : j["edges"])
        edges.push_back(je.get<Edge>());
    std::map<Vertex, std::string> labels;
    if (j.contains("labels"))
        for (auto& [key, val] : j["labels"].items())
            labels[std::stoi(key)] = val.get<std::string>();
    return new_hypergraph(j["k"].get<int>(), j["n"].get<int>(), std::move(edges),
                          std::move(labels));
}

std::string serialize_json(const Hypergraph& h) {
    nlohmann::ordered_json j;
    j["k"] = h.k;
    j["n"] = h.n;
    j["edges"] = h.edges;
    if (!h.labels.empty()) {
        nlohmann::ordered_json jl;
        for (const auto& [v, name] : h.labels)
            jl[std::to_string(v)] = name;
        j["labels"] = jl;
    }
    return j.dump();
}

Hypergraph load_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(errc::syntax_error, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_json(buf.str());
    return parse(buf.str());
}

void save_hypergraph_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        fail(errc::syntax_error, "cannot open " + path + " for writing");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        out << serialize_json(h) << "\n";
    else
        out << serialize(h);
}

} // namespace hypermatch
