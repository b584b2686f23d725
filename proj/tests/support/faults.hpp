// Single-edit corruptions of the clean validator fixture, each expected to
// produce exactly one violation of a known rule.
#pragma once

#include <string>
#include <vector>

#include "lexkg/corpus.hpp"
#include "lexkg/validator.hpp"
#include "support/generators.hpp"

namespace testsupport {

struct SeededFault {
    std::string name;
    std::string from;
    std::string to;
    lexkg::validation::Rule rule;
    lexkg::validation::Mode mode = lexkg::validation::Mode::lenient;
};

inline std::string clean_fixture() { return lexkg::corpus::read_file(fixtures() / "validator" / "clean.ttl"); }

inline std::vector<SeededFault> seeded_faults() {
    using lexkg::validation::Mode;
    using lexkg::validation::Rule;
    return {
        {"negative duration", "\"730\"^^xsd:nonNegativeInteger", "\"-5\"^^xsd:nonNegativeInteger", Rule::BadLiteral},
        {"impossible date", "\"2021-03-04\"^^xsd:date", "\"2023-02-29\"^^xsd:date", Rule::BadLiteral},
        {"undeclared predicate", "fca:decidedBy ex:court", "fca:heardBy ex:court", Rule::UnknownPredicate},
        {"subject outside domain", "fca:offenseCategory fca:ViolentOffense ;\n    fca:crimeLocation ex:lyon .",
         "fca:offenseCategory fca:ViolentOffense .\nfca:Upheld fca:crimeLocation ex:lyon .", Rule::DomainMismatch},
        {"object outside range", "fca:offenseCategory fca:ViolentOffense", "fca:offenseCategory fca:Upheld",
         Rule::RangeMismatch},
        {"untyped subject", "ex:fine a fca:MonetaryPunishment ;\n    fca:amountEUR", "ex:fine fca:amountEUR",
         Rule::UntypedSubject, Mode::strict},
        {"comma decimal", "\"1500.00\"^^xsd:decimal", "\"12,50\"^^xsd:decimal", Rule::BadLiteral},
        {"bad boolean", "\"false\"^^xsd:boolean", "\"yes\"^^xsd:boolean", Rule::BadLiteral},
    };
}

/// Fixture text with the fault applied; empty if the anchor text is missing.
inline std::string apply_fault(const std::string& clean, const SeededFault& f) {
    const auto at = clean.find(f.from);
    if (at == std::string::npos) return {};
    std::string out = clean;
    out.replace(at, f.from.size(), f.to);
    return out;
}

}  // namespace testsupport
