#include "polyrank/report.hpp"

#include "polyrank/complexes.hpp"
#include "polyrank/cover.hpp"
#include "polyrank/flats.hpp"
#include "polyrank/linkgraph.hpp"

#include <sstream>

namespace polyrank {

namespace {

std::string ring_to_string(const Ring& r) {
    std::string s = "(";
    for (size_t i = 0; i < r.size(); i++) {
        if (i) s += " ";
        s += std::to_string(r[i]);
    }
    return s + ")";
}

}  // namespace

std::string report_tables(const std::vector<int>& mesoKs) {
    std::ostringstream out;
    out << "polyrank report " << kToolVersion << "\n\n";

    // classification of orientable complexes, with the matching presets
    std::vector<ComplexClass> classes = classify_orientable();
    out << "classification: " << classes.size() << " orientable classes\n";
    out << "class | type | adjacent | H1 | presets\n";
    for (size_t i = 0; i < classes.size(); i++) {
        const ComplexClass& c = classes[i];
        std::string matches;
        for (const PresetComplex& pc : preset_complexes()) {
            if (!pc.pres.orientable()) continue;
            if (presentations_isomorphic(pc.pres, c.canonical) ||
                presentations_isomorphic(mirror_presentation(pc.pres), c.canonical)) {
                if (!matches.empty()) matches += ",";
                matches += pc.name;
            }
        }
        out << (i + 1) << " | " << c.type_tag << " | " << c.adjacent_identifications << " | "
            << h1_of_complex(c.canonical).to_string() << " | "
            << (matches.empty() ? "-" : matches) << "\n";
    }
    out << "\n";

    // preset homology and Euler characteristics
    out << "presets: name | H1 computed | H1 recorded | chi\n";
    for (const PresetComplex& pc : preset_complexes())
        out << pc.name << " | " << h1_of_complex(pc.pres).to_string() << " | "
            << pc.h1.to_string() << " | " << euler_characteristic(pc.pres) << "\n";
    out << "\n";

    // link spectrum
    Spectrum sp = random_walk_spectrum(make_l74());
    out << "link spectrum: eigenvalue | multiplicity\n";
    for (auto [ev, mult] : sp.eigenvalues) {
        char buf[64];
        snprintf(buf, sizeof(buf), "%.9f | %d", ev, mult);
        out << buf << "\n";
    }
    {
        char buf[64];
        snprintf(buf, sizeof(buf), "lambda1 %.9f", sp.lambda1);
        out << buf << "\n\n";
    }

    // rings per preset
    out << "rings: complex | ring words\n";
    for (const PresetComplex& pc : preset_complexes()) {
        out << pc.name << " |";
        for (const Ring& r : rings(pc.pres)) out << " " << ring_to_string(r);
        out << "\n";
    }
    out << "\n";

    // mesoscopic lower bound
    out << "meso: k | mu | bound | stacks | constructed | unextendable | pass\n";
    for (int k : mesoKs) {
        MesoCheck m = meso_lower_bound_check(k);
        out << m.k << " | " << m.mu << " | " << m.bound << " | " << m.stacksLow << "x"
            << m.stacksHigh << " | " << m.constructed << " | " << m.unextendable << " | "
            << (m.pass ? "pass" : "FAIL") << "\n";
    }
    return out.str();
}

}  // namespace polyrank
