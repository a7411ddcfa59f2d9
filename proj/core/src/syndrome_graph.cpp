#include "syndyn/syndrome_graph.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace syndyn {

size_t SyndromeGraph::num_correctable() const {
    size_t c = 0;
    for (const auto &n : nodes) {
        c += n.correctable;
    }
    return c;
}

int varpi(uint64_t a, uint64_t nu) {
    return std::popcount(a & ~nu) - std::popcount(a & nu);
}

int varpi(const StabilizerCode &code, const ErrorModel &model, size_t j, uint64_t nu) {
    if (j >= model.size()) {
        throw std::out_of_range("error index " + std::to_string(j) + " out of range");
    }
    if (nu >= code.num_syndromes()) {
        throw std::out_of_range("syndrome " + std::to_string(nu) + " out of range");
    }
    return varpi(syndrome_index(code, model[j].op), nu);
}

SyndromeGraph build_graph(const StabilizerCode &code, const ErrorModel &model, const CorrectabilityTable &table) {
    if (table.n != code.n() || table.num_generators != code.num_generators() || table.num_errors != model.size()) {
        throw std::invalid_argument("correctability table was not built for this code and error model");
    }
    SyndromeGraph g;
    g.code_name = code.name();
    g.num_generators = code.num_generators();
    g.num_errors = model.size();
    g.error_syndromes = table.error_syndromes;
    for (const auto &e : model.errors()) {
        g.error_labels.push_back(e.label());
    }
    for (const auto &r : table.records) {
        g.nodes.push_back({r.syndrome, r.correctable, r.weight});
    }
    for (const auto &r : table.records) {
        if (!r.correctable) {
            continue;
        }
        for (size_t j = 0; j < model.size(); j++) {
            uint64_t a = table.error_syndromes[j];
            g.edges.push_back({r.syndrome, j, r.syndrome ^ a, table.transitions[r.syndrome][j], varpi(a, r.syndrome)});
        }
    }
    return g;
}

GraphFormat parse_graph_format(const std::string &name) {
    if (name == "dot" || name == "DOT") {
        return GraphFormat::Dot;
    }
    if (name == "json" || name == "JSON") {
        return GraphFormat::Json;
    }
    throw std::invalid_argument("unknown graph format '" + name + "' (expected dot or json)");
}

namespace {

const char *edge_color(const SyndromeGraph &g, const GraphEdge &e) {
    if (e.cls == TransitionClass::Uncorrectable) {
        return "red";
    }
    switch (g.error_labels[e.error][0]) {
        case 'X':
            return "black";
        case 'Z':
            return "green";
        default:
            return "orange";
    }
}

}  // namespace

std::string export_graph(const SyndromeGraph &g, GraphFormat format) {
    if (format == GraphFormat::Dot) {
        std::ostringstream out;
        out << "digraph \"" << g.code_name << "\" {\n";
        for (const auto &n : g.nodes) {
            out << "  n" << n.syndrome << " [label=\"" << n.syndrome << "\"";
            if (!n.correctable) {
                out << ", style=dashed";
            }
            out << "];\n";
        }
        for (const auto &e : g.edges) {
            out << "  n" << e.source << " -> n" << e.target << " [label=\"" << g.error_labels[e.error]
                << "\", color=" << edge_color(g, e) << ", varpi=" << e.varpi << "];\n";
        }
        out << "}\n";
        return out.str();
    }
    nlohmann::json j;
    j["code"] = g.code_name;
    j["num_generators"] = g.num_generators;
    j["errors"] = nlohmann::json::array();
    for (size_t k = 0; k < g.num_errors; k++) {
        j["errors"].push_back({{"label", g.error_labels[k]}, {"syndrome", g.error_syndromes[k]}});
    }
    j["nodes"] = nlohmann::json::array();
    for (const auto &n : g.nodes) {
        j["nodes"].push_back({{"syndrome", n.syndrome}, {"correctable", n.correctable}, {"weight", n.weight}});
    }
    j["edges"] = nlohmann::json::array();
    for (const auto &e : g.edges) {
        j["edges"].push_back({{"source", e.source},
                              {"error", e.error},
                              {"target", e.target},
                              {"class", e.cls == TransitionClass::Correctable ? "correctable" : "uncorrectable"},
                              {"varpi", e.varpi}});
    }
    return j.dump(2) + "\n";
}

SyndromeGraph import_graph_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    SyndromeGraph g;
    g.code_name = j.at("code").get<std::string>();
    g.num_generators = j.at("num_generators").get<size_t>();
    for (const auto &e : j.at("errors")) {
        g.error_labels.push_back(e.at("label").get<std::string>());
        g.error_syndromes.push_back(e.at("syndrome").get<uint64_t>());
    }
    g.num_errors = g.error_labels.size();
    for (const auto &n : j.at("nodes")) {
        g.nodes.push_back(
            {n.at("syndrome").get<uint64_t>(), n.at("correctable").get<bool>(), n.at("weight").get<size_t>()});
    }
    for (const auto &e : j.at("edges")) {
        auto cls = e.at("class").get<std::string>();
        if (cls != "correctable" && cls != "uncorrectable") {
            throw std::invalid_argument("unknown edge class '" + cls + "'");
        }
        g.edges.push_back({e.at("source").get<uint64_t>(), e.at("error").get<size_t>(), e.at("target").get<uint64_t>(),
                           cls == "correctable" ? TransitionClass::Correctable : TransitionClass::Uncorrectable,
                           e.at("varpi").get<int>()});
    }
    return g;
}

}  // namespace syndyn
