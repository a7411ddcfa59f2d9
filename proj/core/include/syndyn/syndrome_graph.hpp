#pragma once

#include <string>
#include <vector>

#include "syndyn/classification.hpp"

namespace syndyn {

struct GraphNode {
    uint64_t syndrome;
    bool correctable;
    size_t weight;
};

struct GraphEdge {
    uint64_t source;
    size_t error;
    uint64_t target;
    TransitionClass cls;
    int varpi;
    bool operator==(const GraphEdge &o) const = default;
};

struct SyndromeGraph {
    std::string code_name;
    size_t num_generators = 0;
    size_t num_errors = 0;
    /// Error labels such as "X1", in model order.
    std::vector<std::string> error_labels;
    /// Anticommutation patterns of the elementary errors.
    std::vector<uint64_t> error_syndromes;
    /// One node per syndrome, index == syndrome value.
    std::vector<GraphNode> nodes;
    /// Grouped by source (ascending), then error index.
    std::vector<GraphEdge> edges;

    size_t num_correctable() const;
};

/// Sum over generators anticommuting with error j of (-1)^{nu_m}; `error_syndrome`
/// is nu(j).
int varpi(uint64_t error_syndrome, uint64_t nu);
int varpi(const StabilizerCode &code, const ErrorModel &model, size_t j, uint64_t nu);

SyndromeGraph build_graph(const StabilizerCode &code, const ErrorModel &model, const CorrectabilityTable &table);

enum class GraphFormat { Dot, Json };
GraphFormat parse_graph_format(const std::string &name);
std::string export_graph(const SyndromeGraph &graph, GraphFormat format);
/// Inverse of the JSON export.
SyndromeGraph import_graph_json(const std::string &text);

}  // namespace syndyn
