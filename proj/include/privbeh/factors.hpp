#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "privbeh/errors.hpp"

namespace privbeh {

// The three situational factors a disclosure decision depends on.
// Enumerator order is fixed; iteration over values must be deterministic.

enum class InformationType : std::uint8_t { Health, Finance, Relationship };
enum class TrustSource : std::uint8_t { Family, Friend, Expert, SelfSearch };
enum class RecipientRole : std::uint8_t { Family, Friend, Colleague, OnlineService };

inline constexpr std::array<InformationType, 3> kInformationTypes = {
    InformationType::Health, InformationType::Finance,
    InformationType::Relationship};

inline constexpr std::array<TrustSource, 4> kTrustSources = {
    TrustSource::Family, TrustSource::Friend, TrustSource::Expert,
    TrustSource::SelfSearch};

inline constexpr std::array<RecipientRole, 4> kRecipientRoles = {
    RecipientRole::Family, RecipientRole::Friend, RecipientRole::Colleague,
    RecipientRole::OnlineService};

// Canonical lowercase tokens used in record files.
std::string_view token_of(InformationType t);
std::string_view token_of(TrustSource t);
std::string_view token_of(RecipientRole t);

InformationType information_type_from_token(std::string_view token);
TrustSource trust_source_from_token(std::string_view token);
RecipientRole recipient_role_from_token(std::string_view token);

/// One (information type, trust source, recipient role) combination.
struct FactorTriple {
  InformationType info_type;
  TrustSource trust_source;
  RecipientRole recipient_role;

  auto operator<=>(const FactorTriple&) const = default;
};

/// All 48 factor triples, in fixed (info, trust, recipient) enum order.
std::vector<FactorTriple> all_factor_triples();

/// One survey response: the user's share / not-share decision for one
/// scenario.
struct DisclosureRecord {
  std::string user_id;
  int scenario_id = 0;
  InformationType info_type = InformationType::Health;
  TrustSource trust_source = TrustSource::Family;
  RecipientRole recipient_role = RecipientRole::Family;
  bool shared = false;

  FactorTriple triple() const { return {info_type, trust_source, recipient_role}; }
};

}  // namespace privbeh
