#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plausia {

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Verdict v);

/// One concrete violation (or illustration): an ordered list of labelled
/// payload fields, all in canonical text form (events as "{w1 w3}", values
/// as "13/50" or "(1/2,2/3)"). Canonical text is machine-readable back
/// through the event/value parsers, which is what witness-replay relies on.
struct Witness {
    std::vector<std::pair<std::string, std::string>> fields;

    Witness& put(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    const std::string* find(std::string_view key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return &v;
        return nullptr;
    }
    std::string str() const;
};

/// Outcome of one axiom / structural check. Failures always carry at least
/// one witness; `witnesses` is capped at kMaxWitnesses while `violations`
/// keeps the full count.
struct CheckReport {
    static constexpr std::size_t kMaxWitnesses = 8;

    std::string id;
    Verdict verdict = Verdict::Pass;
    std::int64_t examined = 0;
    std::int64_t skipped = 0;
    std::int64_t violations = 0;
    std::vector<Witness> witnesses;
    std::string note;

    void fail(Witness w) {
        verdict = Verdict::Fail;
        ++violations;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
    }
    bool passed() const { return verdict == Verdict::Pass; }
    bool failed() const { return verdict == Verdict::Fail; }
};

/// Single-line rendering used by the CLI text output.
std::string to_text(const CheckReport& r);

}  // namespace plausia
