#include <cstdio>

#include <wellscat/wellscat.hpp>

/// Builds a small non-transparency certificate and prints the JSON record.
int main() {
    using namespace wellscat;
    const DoubleWellConfig config(0.8, 3.0, 50.0);
    const auto cert = certify_non_transparency(config, 2, 2, 0.5, 10.0);
    std::fputs(certificate_json(cert).c_str(), stdout);
    return cert.pass ? 0 : 1;
}
