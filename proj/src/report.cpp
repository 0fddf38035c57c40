#include "plausia/report.hpp"

#include <sstream>

namespace plausia {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::string Witness::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : fields) {
        if (!first) os << " ";
        first = false;
        os << k << "=" << v;
    }
    return os.str();
}

std::string to_text(const CheckReport& r) {
    std::ostringstream os;
    os << r.id << ": " << to_string(r.verdict) << " (examined " << r.examined;
    if (r.skipped > 0) os << ", skipped " << r.skipped;
    if (r.violations > 0) os << ", violations " << r.violations;
    os << ")";
    if (!r.note.empty()) os << " [" << r.note << "]";
    for (const auto& w : r.witnesses) os << "\n  witness: " << w.str();
    return os.str();
}

}  // namespace plausia
