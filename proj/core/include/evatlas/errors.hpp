#pragma once

#include <stdexcept>
#include <string>

namespace evatlas {

// Hard failures: malformed configuration, unreadable inputs, corrupted atlas
// payloads. Per-claim problems are *data* (violations / rejections), not
// exceptions; only conditions that make the whole operation meaningless throw.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Unknown time-unit token: the conversion table must enumerate every unit.
struct UnknownUnitError : Error {
    using Error::Error;
};

// Measure family/type contradiction that validation should have caught.
struct SignatureError : Error {
    using Error::Error;
};

// JSON syntax error in a card / config / atlas file; message carries origin + offset.
struct ParseError : Error {
    using Error::Error;
};

// Corpus-level failure, e.g. duplicate card_id.
struct CompileError : Error {
    using Error::Error;
};

// Malformed canonical payload that cannot be mapped back to a reported claim.
struct ReconstructionError : Error {
    using Error::Error;
};

} // namespace evatlas
