#pragma once

#include "cantor/contfrac.hpp"
#include "cantor/digitset.hpp"
#include "cantor/exponents.hpp"
#include "cantor/extrinsic.hpp"
#include "cantor/ifs.hpp"
#include "cantor/intrinsic.hpp"
#include "cantor/rational.hpp"
#include "cantor/reals.hpp"

#include "json.hpp"

#include <string>

namespace cantor {

using Json = nlohmann::ordered_json;

// Every bound in a report carries the exact value and a decimal rendering
// labeled display-only. Integers past the digit threshold are rendered
// structurally (digit count plus leading digits) so reports stay bounded.
Json int_json(const Int& n, size_t digit_threshold = 80);
Json rat_json(const Rat& x);
Json interval_json(const RatInterval& iv);
Json scaledpow_json(const ScaledPow& v);
Json address_json(const Address& a);
Json expansion_json(const BaseExpansion& e, const Int& base);
Json certificate_json(const MembershipCertificate& c, const Int& base);
Json convergent_json(const Convergent& c);

// The envelope shared by all commands: command name, echoed inputs, outputs,
// artifact version, and the determinism seed. Timing data lives in a separate
// block that callers attach only on request, so default output is
// byte-identical across runs.
Json report_envelope(const std::string& command, Json inputs, Json outputs, uint64_t seed);

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace cantor
