#include "privbeh/factors.hpp"

namespace privbeh {

std::string_view token_of(InformationType t) {
  switch (t) {
    case InformationType::Health: return "health";
    case InformationType::Finance: return "finance";
    case InformationType::Relationship: return "relationship";
  }
  throw ModelError("invalid InformationType value");
}

std::string_view token_of(TrustSource t) {
  switch (t) {
    case TrustSource::Family: return "family";
    case TrustSource::Friend: return "friend";
    case TrustSource::Expert: return "expert";
    case TrustSource::SelfSearch: return "self";
  }
  throw ModelError("invalid TrustSource value");
}

std::string_view token_of(RecipientRole t) {
  switch (t) {
    case RecipientRole::Family: return "family";
    case RecipientRole::Friend: return "friend";
    case RecipientRole::Colleague: return "colleague";
    case RecipientRole::OnlineService: return "online";
  }
  throw ModelError("invalid RecipientRole value");
}

InformationType information_type_from_token(std::string_view token) {
  for (auto t : kInformationTypes) {
    if (token_of(t) == token) return t;
  }
  throw IoError("unknown information type token '" + std::string(token) + "'");
}

TrustSource trust_source_from_token(std::string_view token) {
  for (auto t : kTrustSources) {
    if (token_of(t) == token) return t;
  }
  throw IoError("unknown trust source token '" + std::string(token) + "'");
}

RecipientRole recipient_role_from_token(std::string_view token) {
  for (auto t : kRecipientRoles) {
    if (token_of(t) == token) return t;
  }
  throw IoError("unknown recipient role token '" + std::string(token) + "'");
}

std::vector<FactorTriple> all_factor_triples() {
  std::vector<FactorTriple> out;
  out.reserve(kInformationTypes.size() * kTrustSources.size() * kRecipientRoles.size());
  for (auto it : kInformationTypes) {
    for (auto ts : kTrustSources) {
      for (auto rr : kRecipientRoles) {
        out.push_back({it, ts, rr});
      }
    }
  }
  return out;
}

}  // namespace privbeh
