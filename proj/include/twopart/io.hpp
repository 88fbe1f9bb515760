#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twopart/digraph.hpp"
#include "twopart/kernel.hpp"
#include "twopart/solver.hpp"

namespace twopart::io {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Edge-list document: header "n m" then exactly m lines "u v".  Blank lines
/// are not allowed between arcs; a trailing newline is.
Digraph parse_digraph(std::string_view text);
std::string render_digraph(const Digraph& d);

struct ResultDocument {
    bool yes = false;
    std::vector<Vertex> v1, v2;
    std::vector<Arc> branching;  // (parent, child)
    std::vector<std::string> case_trace;
    double elapsed_ms = 0.0;
};

ResultDocument to_document(const SolveResult& result, double elapsed_ms);
/// Rebuilds the witness; the root is the V1 vertex that is nobody's child.
GoodPartition to_partition(const ResultDocument& doc);

std::string render_json(const ResultDocument& doc);
std::string render_plain(const ResultDocument& doc);
/// Accepts either rendering (JSON when the first non-space character is '{').
ResultDocument parse_result(std::string_view text);

}  // namespace twopart::io
