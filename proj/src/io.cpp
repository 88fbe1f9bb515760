#include "twopart/io.hpp"

#include <charconv>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace twopart::io {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool to_number(std::string_view tok, std::size_t& value) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

Digraph parse_digraph(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header \"n m\"");
    auto header = tokens(lines[0]);
    std::size_t n = 0, m = 0;
    if (header.size() != 2 || !to_number(header[0], n) || !to_number(header[1], m)) {
        throw ParseError(1, "malformed header, expected \"n m\"");
    }
    if (n > static_cast<std::size_t>(std::numeric_limits<Vertex>::max())) throw ParseError(1, "vertex count too large");
    std::vector<Arc> arcs;
    std::set<Arc> seen;
    for (std::size_t i = 1; i <= m; ++i) {
        if (i >= lines.size()) {
            throw ParseError(i + 1, "expected " + std::to_string(m) + " arcs, found " + std::to_string(i - 1));
        }
        auto tok = tokens(lines[i]);
        std::size_t u = 0, v = 0;
        if (tok.size() != 2 || !to_number(tok[0], u) || !to_number(tok[1], v)) {
            throw ParseError(i + 1, "malformed arc, expected \"u v\"");
        }
        if (u >= n || v >= n) throw ParseError(i + 1, "vertex id out of range [0, " + std::to_string(n) + ")");
        if (u == v) throw ParseError(i + 1, "self-loop at vertex " + std::to_string(u));
        Arc a{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (!seen.insert(a).second) throw ParseError(i + 1, "duplicate arc " + std::to_string(u) + " " + std::to_string(v));
        arcs.push_back(a);
    }
    for (std::size_t i = m + 1; i < lines.size(); ++i) {
        if (!tokens(lines[i]).empty()) {
            throw ParseError(i + 1, "more arc lines than the header's m = " + std::to_string(m));
        }
    }
    return Digraph(n, arcs);
}

std::string render_digraph(const Digraph& d) {
    std::ostringstream out;
    out << d.order() << ' ' << d.size() << '\n';
    for (const Arc& a : d.arcs()) out << a.tail << ' ' << a.head << '\n';
    return out.str();
}

ResultDocument to_document(const SolveResult& result, double elapsed_ms) {
    ResultDocument doc;
    doc.yes = result.yes;
    doc.case_trace = result.trace;
    doc.elapsed_ms = elapsed_ms;
    if (result.yes && result.witness) {
        doc.v1 = result.witness->v1.members();
        doc.v2 = result.witness->v2.members();
        for (const auto& [child, parent] : result.witness->branching.parent) doc.branching.push_back({parent, child});
    }
    return doc;
}

GoodPartition to_partition(const ResultDocument& doc) {
    GoodPartition p;
    p.v1 = VertexSet(doc.v1);
    p.v2 = VertexSet(doc.v2);
    std::set<Vertex> children;
    for (const Arc& a : doc.branching) {
        p.branching.parent[a.head] = a.tail;
        children.insert(a.head);
    }
    for (Vertex v : p.v1) {
        if (!children.contains(v)) {
            p.branching.root = v;
            break;
        }
    }
    return p;
}

std::string render_json(const ResultDocument& doc) {
    nlohmann::ordered_json j;
    j["answer"] = doc.yes ? "YES" : "NO";
    if (doc.yes) {
        j["v1"] = doc.v1;
        j["v2"] = doc.v2;
        auto pairs = nlohmann::json::array();
        for (const Arc& a : doc.branching) pairs.push_back({a.tail, a.head});
        j["branching"] = pairs;
    }
    j["case_trace"] = doc.case_trace;
    j["elapsed_ms"] = doc.elapsed_ms;
    return j.dump() + "\n";
}

std::string render_plain(const ResultDocument& doc) {
    std::ostringstream out;
    out << "answer " << (doc.yes ? "YES" : "NO") << '\n';
    if (doc.yes) {
        out << "v1";
        for (Vertex v : doc.v1) out << ' ' << v;
        out << "\nv2";
        for (Vertex v : doc.v2) out << ' ' << v;
        out << '\n';
        for (const Arc& a : doc.branching) out << "arc " << a.tail << ' ' << a.head << '\n';
    }
    out << "trace";
    for (const auto& label : doc.case_trace) out << ' ' << label;
    out << "\nelapsed_ms " << doc.elapsed_ms << '\n';
    return out.str();
}

ResultDocument parse_result(std::string_view text) {
    ResultDocument doc;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
            doc.yes = j.at("answer").get<std::string>() == "YES";
            if (doc.yes) {
                doc.v1 = j.at("v1").get<std::vector<Vertex>>();
                doc.v2 = j.at("v2").get<std::vector<Vertex>>();
                for (const auto& pair : j.at("branching")) doc.branching.push_back({pair.at(0), pair.at(1)});
            }
            if (j.contains("case_trace")) doc.case_trace = j["case_trace"].get<std::vector<std::string>>();
            if (j.contains("elapsed_ms")) doc.elapsed_ms = j["elapsed_ms"].get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(1, std::string("invalid result JSON: ") + e.what());
        }
        return doc;
    }

    auto lines = split_lines(text);
    bool saw_answer = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto tok = tokens(lines[i]);
        if (tok.empty()) continue;
        const auto ids = [&](std::size_t from) {
            std::vector<Vertex> out;
            for (std::size_t k = from; k < tok.size(); ++k) {
                std::size_t v = 0;
                if (!to_number(tok[k], v)) throw ParseError(i + 1, "expected a vertex id");
                out.push_back(static_cast<Vertex>(v));
            }
            return out;
        };
        if (tok[0] == "answer") {
            if (tok.size() != 2 || (tok[1] != "YES" && tok[1] != "NO")) throw ParseError(i + 1, "expected YES or NO");
            doc.yes = tok[1] == "YES";
            saw_answer = true;
        } else if (tok[0] == "v1") {
            doc.v1 = ids(1);
        } else if (tok[0] == "v2") {
            doc.v2 = ids(1);
        } else if (tok[0] == "arc") {
            auto pair = ids(1);
            if (pair.size() != 2) throw ParseError(i + 1, "expected \"arc parent child\"");
            doc.branching.push_back({pair[0], pair[1]});
        } else if (tok[0] == "trace") {
            for (std::size_t k = 1; k < tok.size(); ++k) doc.case_trace.emplace_back(tok[k]);
        } else if (tok[0] == "elapsed_ms") {
            doc.elapsed_ms = tok.size() > 1 ? std::stod(std::string(tok[1])) : 0.0;
        } else {
            throw ParseError(i + 1, "unknown field \"" + std::string(tok[0]) + "\"");
        }
    }
    if (!saw_answer) throw ParseError(1, "missing \"answer\" line");
    return doc;
}

}  // namespace twopart::io
