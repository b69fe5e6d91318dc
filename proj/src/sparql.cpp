#include "kgmdl/sparql.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kgmdl {

namespace {

std::string variable_name(VertexId v) { return "?x" + std::to_string(v + 1); }

Term literal_term(const Symbol& s) {
    Term t;
    t.kind = TermKind::Literal;
    t.value = s.value.value();
    t.datatype = s.datatype;
    t.lang = s.lang;
    return t;
}

/** `a` for rdf:type conversions, the configured predicate otherwise. */
std::string type_predicate_token(const ConversionOptions& options) {
    const auto& preds = options.type_predicates;
    if (preds.empty() ||
        std::find(preds.begin(), preds.end(), std::string(rdf_type_iri)) != preds.end())
        return "a";
    return "<" + preds.front() + ">";
}

struct VertexPlan {
    std::vector<SymbolId> classes;  // sorted by IRI
    std::vector<SymbolId> literals; // LiteralValue labels
    bool nil = false;
    bool selected = false;     // appears in the SELECT clause
    std::string replacement;   // non-empty: rendered term instead of a variable
    std::vector<std::string> filters;
};

} // namespace

std::string pattern_to_sparql(const PatternGraph& pattern, const std::vector<VertexId>& ports,
                              const ConversionMap& map, const SparqlExportOptions& options) {
    if (!map.symbols)
        throw ExportError("conversion map has no symbol table");
    const SymbolTable& symbols = *map.symbols;
    const LabeledMultigraph& g = pattern.graph();
    const std::string type_token = type_predicate_token(map.options);

    std::vector<VertexId> selected(ports);
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    if (!selected.empty() && selected.back() >= g.vertex_count())
        throw ExportError("port vertex outside the pattern");
    if (selected.empty())
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            selected.push_back(v);

    std::vector<VertexPlan> plan(g.vertex_count());
    for (VertexId v : selected)
        plan[v].selected = true;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (SymbolId label : g.labels_of(v)) {
            if (label >= symbols.size())
                throw ExportError("pattern label missing from the conversion map");
            const Symbol& s = symbols.symbol(label);
            switch (s.kind) {
            case SymbolKind::Class: plan[v].classes.push_back(label); break;
            case SymbolKind::LiteralValue: plan[v].literals.push_back(label); break;
            case SymbolKind::Nil: plan[v].nil = true; break;
            case SymbolKind::Relation:
                throw ExportError("relation symbol used as a vertex label");
            }
        }
        std::sort(plan[v].classes.begin(), plan[v].classes.end(),
                  [&](SymbolId a, SymbolId b) { return symbols.symbol(a).iri < symbols.symbol(b).iri; });
    }

    // Decide which vertices render as constant terms rather than variables.
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto& p = plan[v];
        bool single_label = g.labels_of(v).size() == 1;
        if (p.nil && single_label && !p.selected) {
            p.replacement = "<" + std::string(rdf_nil_iri) + ">";
            continue;
        }
        if (p.literals.size() == 1 && single_label && !p.selected &&
            g.out_edges(v).empty() && !g.in_edges(v).empty()) {
            const Symbol& s = symbols.symbol(p.literals.front());
            if (s.value) {
                p.replacement = serialize_term(literal_term(s));
                continue;
            }
        }
        // Constrained variables keep their name and gain filters.
        std::string var = variable_name(v);
        for (SymbolId label : p.literals) {
            const Symbol& s = symbols.symbol(label);
            if (s.value) {
                p.filters.push_back("FILTER(" + var + " = " +
                                    serialize_term(literal_term(s)) + ")");
            } else {
                std::string f = "FILTER(datatype(" + var + ") = <" + s.datatype + ">";
                if (!s.lang.empty())
                    f += " && lang(" + var + ") = \"" + s.lang + "\"";
                p.filters.push_back(f + ")");
            }
        }
        if (p.nil)
            p.filters.push_back("FILTER(" + var + " = <" + std::string(rdf_nil_iri) + ">)");
    }

    auto term_of = [&](VertexId v) {
        return plan[v].replacement.empty() ? variable_name(v) : plan[v].replacement;
    };

    // One predicate-object group per subject, classes first, then out-edges
    // ordered by predicate IRI and object.
    std::vector<std::string> lines;
    bool any_triple = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto& p = plan[v];
        std::vector<std::pair<std::string, std::string>> po;
        for (SymbolId label : p.classes)
            po.emplace_back(type_token, "<" + symbols.symbol(label).iri + ">");
        std::vector<std::pair<std::string, std::string>> edge_po;
        for (EdgeId eid : g.out_edges(v)) {
            const Edge& e = g.edges()[eid];
            edge_po.emplace_back("<" + symbols.symbol(e.label).iri + ">", term_of(e.dst));
        }
        std::sort(edge_po.begin(), edge_po.end());
        po.insert(po.end(), edge_po.begin(), edge_po.end());
        if (po.empty())
            continue;
        std::ostringstream line;
        line << "  " << term_of(v);
        for (std::size_t i = 0; i < po.size(); ++i) {
            line << (i == 0 ? " " : " ; ") << po[i].first << " " << po[i].second;
        }
        line << " .";
        lines.push_back(line.str());
        any_triple = true;
    }

    // A lone valued literal still needs a binding to be queryable.
    if (!any_triple) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const auto& p = plan[v];
            if (p.selected && p.literals.size() == 1 && p.classes.empty() && !p.nil) {
                const Symbol& s = symbols.symbol(p.literals.front());
                if (s.value)
                    lines.push_back("  BIND(" + serialize_term(literal_term(s)) + " AS " +
                                    variable_name(v) + ")");
            }
        }
        if (lines.empty())
            throw ExportError("pattern yields no triple patterns");
    }

    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (const auto& f : plan[v].filters)
            lines.push_back("  " + f);

    if (options.strict_isomorphism_filter) {
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            if (!plan[u].replacement.empty())
                continue;
            for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
                if (!plan[v].replacement.empty())
                    continue;
                auto lu = g.labels_of(u);
                auto lv = g.labels_of(v);
                if (std::vector<SymbolId>(lu.begin(), lu.end()) ==
                    std::vector<SymbolId>(lv.begin(), lv.end()))
                    lines.push_back("  FILTER(" + variable_name(u) +
                                    " != " + variable_name(v) + ")");
            }
        }
    }

    std::ostringstream out;
    out << "SELECT";
    for (VertexId v : selected)
        if (plan[v].replacement.empty())
            out << " " << variable_name(v);
    out << " WHERE {\n";
    for (const auto& line : lines)
        out << line << "\n";
    out << "}\n";
    return out.str();
}

} // namespace kgmdl
