#pragma once

// Certificate documents: a JSON text holding one or more named certificates
// with every float written in hexadecimal, so a file re-checks bit-exactly
// without re-running any search.

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rz/enclose.hpp"
#include "rz/miranda.hpp"
#include "rz/winding.hpp"

namespace rz {

using Certificate = std::variant<SignCertificate, MirandaCertificate, WindingCertificate>;

struct CertificateDocument {
    std::string operation;
    std::vector<std::pair<std::string, Certificate>> entries;
};

/// "0x1.5555555555555p-2" style; round-trips exactly.
std::string hex_double(double v);
double parse_hex_double(std::string_view text);

/// 64-bit FNV-1a over the hexadecimal form of the weights and frequencies.
std::string fingerprint(const TrigPolynomial& poly);

std::string write_document(const CertificateDocument& doc);
/// Throws Error(ParseError) on malformed input.
CertificateDocument read_document(std::string_view text);

bool recheck(const Certificate& cert);
/// True when the document is non-empty and every entry re-checks.
bool recheck(const CertificateDocument& doc);

}  // namespace rz
