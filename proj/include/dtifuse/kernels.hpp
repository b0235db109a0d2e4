#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dtifuse/kg.hpp"
#include "dtifuse/search.hpp"
#include "dtifuse/weightfit.hpp"

// Batch kernels. Each has an OpenMP version and a serial reference that
// tests compare against; results are identical except for the Gram sums,
// whose reduction order differs.
namespace dtifuse::kernels {

using EntityPair = std::pair<EntityId, EntityId>;

/// Shortest hop count per pair (-1 for absent or disconnected).
/// Throws Error{SameEntity} before any work if a pair repeats an entity.
std::vector<int> hop_counts(const KnowledgeGraph& g, std::span<const EntityPair> pairs);
std::vector<double> kg_scores(const KnowledgeGraph& g, std::span<const EntityPair> pairs);

std::vector<int> result_scores(std::span<const SearchResultRecord> records, const EntityId& drug,
                               const EntityId& target, const FusionConfig& cfg);

Gram gram(const FitProblem& p);

namespace serial {
std::vector<int> hop_counts(const KnowledgeGraph& g, std::span<const EntityPair> pairs);
std::vector<double> kg_scores(const KnowledgeGraph& g, std::span<const EntityPair> pairs);
std::vector<int> result_scores(std::span<const SearchResultRecord> records, const EntityId& drug,
                               const EntityId& target, const FusionConfig& cfg);
Gram gram(const FitProblem& p);
}  // namespace serial

}  // namespace dtifuse::kernels
