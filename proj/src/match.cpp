#include "kgmdl/match.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgmdl {

namespace {

struct PlanStep {
    VertexId pattern_vertex;
    // anchor: a previously placed pattern vertex reaching this one; -1 for roots
    int anchor_position = -1;
    SymbolId anchor_label = 0;
    bool anchor_outgoing = false; // true: anchor -> this, false: this -> anchor
};

class Matcher {
public:
    Matcher(const PatternGraph& pattern, const LabeledMultigraph& data,
            const EnumerationBudget& budget, const std::function<bool(const Embedding&)>& visit)
        : p_(pattern.graph()), d_(data), budget_(budget), visit_(visit) {}

    EnumerationOutcome run() {
        if (p_.vertex_count() > d_.vertex_count())
            return outcome_;
        build_plan();
        assignment_.assign(p_.vertex_count(), 0);
        position_of_.assign(p_.vertex_count(), 0);
        for (std::size_t i = 0; i < plan_.size(); ++i)
            position_of_[plan_[i].pattern_vertex] = i;
        used_.assign(d_.vertex_count(), 0);
        extend(0);
        return outcome_;
    }

private:
    /** Estimated candidate count for seeding: label-indexed when labeled. */
    std::size_t estimate(VertexId pv) const {
        std::size_t best = d_.vertex_count();
        for (SymbolId l : p_.labels_of(pv))
            best = std::min(best, d_.vertices_with_label(l).size());
        return best;
    }

    void build_plan() {
        const std::size_t n = p_.vertex_count();
        std::vector<char> placed(n, 0);

        auto better_seed = [&](VertexId a, VertexId b) {
            return std::make_tuple(estimate(a), SIZE_MAX - p_.degree(a), a) <
                   std::make_tuple(estimate(b), SIZE_MAX - p_.degree(b), b);
        };

        VertexId seed = 0;
        for (VertexId v = 1; v < n; ++v)
            if (better_seed(v, seed))
                seed = v;
        plan_.push_back({seed, -1, 0, false});
        placed[seed] = 1;

        while (plan_.size() < n) {
            // next vertex: adjacent to a placed one, smallest estimate
            VertexId next = n;
            for (const auto& e : p_.edges()) {
                if (e.src == e.dst)
                    continue;
                for (auto [from, to] : {std::pair{e.src, e.dst}, std::pair{e.dst, e.src}}) {
                    if (placed[from] && !placed[to] && (next == n || better_seed(to, next)))
                        next = to;
                }
            }
            if (next == n)
                throw PatternError("pattern is not connected"); // construction forbids this

            // anchor: pick the connecting edge whose label is rarest in the data
            PlanStep step{next, -1, 0, false};
            std::size_t best_freq = SIZE_MAX;
            for (const auto& e : p_.edges()) {
                if (e.src == e.dst)
                    continue;
                if (placed[e.src] && e.dst == next) {
                    const std::size_t f = data_label_frequency(e.label);
                    if (f < best_freq) {
                        best_freq = f;
                        step.anchor_position = static_cast<int>(plan_position(e.src));
                        step.anchor_label = e.label;
                        step.anchor_outgoing = true;
                    }
                }
                if (placed[e.dst] && e.src == next) {
                    const std::size_t f = data_label_frequency(e.label);
                    if (f < best_freq) {
                        best_freq = f;
                        step.anchor_position = static_cast<int>(plan_position(e.dst));
                        step.anchor_label = e.label;
                        step.anchor_outgoing = false;
                    }
                }
            }
            plan_.push_back(step);
            placed[next] = 1;
        }
    }

    std::size_t plan_position(VertexId pv) const {
        for (std::size_t i = 0; i < plan_.size(); ++i)
            if (plan_[i].pattern_vertex == pv)
                return i;
        throw std::logic_error("vertex not planned yet");
    }

    std::size_t data_label_frequency(SymbolId label) {
        if (label_freq_.empty())
            for (const auto& e : d_.edges())
                ++label_freq_[e.label];
        const auto it = label_freq_.find(label);
        return it == label_freq_.end() ? 0 : it->second;
    }

    bool out_of_budget() {
        if (stopped_)
            return true;
        if (budget_.cancel && budget_.cancel->load(std::memory_order_relaxed))
            stopped_ = true;
        else if (budget_.deadline && ++ticks_ % 128 == 1 &&
                 std::chrono::steady_clock::now() >= *budget_.deadline)
            stopped_ = true;
        if (stopped_)
            outcome_.complete = false;
        return stopped_;
    }

    /** All structural checks for mapping pattern vertex pv to data vertex dv. */
    bool feasible(VertexId pv, VertexId dv, std::size_t position) const {
        if (used_[dv])
            return false;
        const auto plabels = p_.labels_of(pv);
        if (plabels.size() > d_.labels_of(dv).size())
            return false;
        for (SymbolId l : plabels)
            if (!d_.has_vertex_label(dv, l))
                return false;
        if (p_.out_edges(pv).size() > d_.out_edges(dv).size() ||
            p_.in_edges(pv).size() > d_.in_edges(dv).size())
            return false;
        for (EdgeId e : p_.out_edges(pv)) {
            const auto& edge = p_.edges()[e];
            if (edge.dst == pv) { // self-loop
                if (!d_.has_edge(dv, dv, edge.label))
                    return false;
                continue;
            }
            if (position_of_[edge.dst] < position &&
                !d_.has_edge(dv, assignment_[edge.dst], edge.label))
                return false;
        }
        for (EdgeId e : p_.in_edges(pv)) {
            const auto& edge = p_.edges()[e];
            if (edge.src == pv)
                continue;
            if (position_of_[edge.src] < position &&
                !d_.has_edge(assignment_[edge.src], dv, edge.label))
                return false;
        }
        return true;
    }

    bool emit() {
        Embedding emb;
        emb.map = assignment_;
        ++outcome_.count;
        if (!visit_(emb)) {
            stopped_ = true;
            outcome_.complete = false;
            return false;
        }
        if (budget_.max_count && outcome_.count >= *budget_.max_count) {
            stopped_ = true;
            outcome_.complete = false;
            return false;
        }
        return true;
    }

    void extend(std::size_t position) {
        if (out_of_budget())
            return;
        if (position == plan_.size()) {
            emit();
            return;
        }
        const PlanStep& step = plan_[position];
        const VertexId pv = step.pattern_vertex;

        auto try_candidate = [&](VertexId dv) {
            if (stopped_ || !feasible(pv, dv, position))
                return;
            assignment_[pv] = dv;
            used_[dv] = 1;
            extend(position + 1);
            used_[dv] = 0;
        };

        if (step.anchor_position >= 0) {
            const VertexId anchor_dv = assignment_[plan_[step.anchor_position].pattern_vertex];
            if (step.anchor_outgoing) {
                for (EdgeId e : d_.out_edges(anchor_dv)) {
                    const auto& edge = d_.edges()[e];
                    if (edge.label != step.anchor_label)
                        continue;
                    try_candidate(edge.dst);
                    if (stopped_)
                        return;
                }
            } else {
                for (EdgeId e : d_.in_edges(anchor_dv)) {
                    const auto& edge = d_.edges()[e];
                    if (edge.label != step.anchor_label)
                        continue;
                    try_candidate(edge.src);
                    if (stopped_)
                        return;
                }
            }
            return;
        }

        const auto plabels = p_.labels_of(pv);
        if (!plabels.empty()) {
            SymbolId rarest = plabels[0];
            for (SymbolId l : plabels)
                if (d_.vertices_with_label(l).size() < d_.vertices_with_label(rarest).size())
                    rarest = l;
            for (VertexId dv : d_.vertices_with_label(rarest)) {
                try_candidate(dv);
                if (stopped_)
                    return;
            }
        } else {
            for (VertexId dv = 0; dv < d_.vertex_count(); ++dv) {
                try_candidate(dv);
                if (stopped_)
                    return;
            }
        }
    }

    const LabeledMultigraph& p_;
    const LabeledMultigraph& d_;
    EnumerationBudget budget_;
    const std::function<bool(const Embedding&)>& visit_;

    std::vector<PlanStep> plan_;
    std::vector<VertexId> assignment_;
    std::vector<std::size_t> position_of_;
    std::vector<char> used_;
    std::map<SymbolId, std::size_t> label_freq_;
    EnumerationOutcome outcome_;
    bool stopped_ = false;
    std::size_t ticks_ = 0;
};

} // namespace

EnumerationOutcome
enumerate_occurrences(const PatternGraph& pattern, const LabeledMultigraph& data,
                      const EnumerationBudget& budget,
                      const std::function<bool(const Embedding&)>& visit) {
    return Matcher(pattern, data, budget, visit).run();
}

std::vector<Embedding> all_occurrences(const PatternGraph& pattern,
                                       const LabeledMultigraph& data) {
    std::vector<Embedding> out;
    enumerate_occurrences(pattern, data, {}, [&](const Embedding& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

bool is_occurrence(const PatternGraph& pattern, const LabeledMultigraph& data,
                   const Embedding& m) {
    const auto& p = pattern.graph();
    if (m.map.size() != p.vertex_count())
        return false;
    std::set<VertexId> images;
    for (VertexId dv : m.map) {
        if (dv >= data.vertex_count() || !images.insert(dv).second)
            return false;
    }
    for (const auto& vl : p.vertex_labels())
        if (!data.has_vertex_label(m.map[vl.vertex], vl.label))
            return false;
    for (const auto& e : p.edges())
        if (!data.has_edge(m.map[e.src], m.map[e.dst], e.label))
            return false;
    return true;
}

} // namespace kgmdl
