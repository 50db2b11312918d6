#include "CLI11.hpp"
#include "json.hpp"

#include "polyrank/complexes.hpp"
#include "polyrank/cover.hpp"
#include "polyrank/flats.hpp"
#include "polyrank/homology.hpp"
#include "polyrank/linkgraph.hpp"
#include "polyrank/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace polyrank;

namespace {

long long env_budget() {
    const char* s = std::getenv("POLYRANK_BUDGET");
    if (!s || !*s) return kDefaultBudget;
    long long v = std::atoll(s);
    if (v <= 0) throw std::invalid_argument("bad POLYRANK_BUDGET");
    return v;
}

// FNV-1a over the full command line, embedded in every report
std::string config_hash(int argc, char** argv) {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < argc; i++)
        for (const char* c = argv[i]; *c; c++) {
            h ^= (unsigned char)*c;
            h *= 1099511628211ull;
        }
    char buf[20];
    snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Presentation load_presentation(const std::string& presetName, const std::string& file) {
    if (!presetName.empty() && !file.empty())
        throw std::invalid_argument("give either a preset or a presentation file");
    if (!presetName.empty()) return preset(presetName).pres;
    if (!file.empty()) return parse_presentation(read_file(file));
    throw std::invalid_argument("a presentation is required (--preset or --presentation)");
}

LinkGraph load_graph(const std::string& file) {
    if (file.empty()) return make_l74();
    return parse_graph_text(read_file(file));
}

json spectrum_json(const Spectrum& sp) {
    json j;
    j["eigenvalues"] = json::array();
    for (auto [ev, mult] : sp.eigenvalues) j["eigenvalues"].push_back({ev, mult});
    j["lambda1"] = sp.lambda1;
    return j;
}

// "8", "8,10,12" or "8..14" (optionally "8..14:2")
std::vector<int> parse_k_range(const std::string& text) {
    std::vector<int> ks;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t dots = part.find("..");
        if (dots == std::string::npos) {
            ks.push_back(std::stoi(part));
            continue;
        }
        int lo = std::stoi(part.substr(0, dots));
        std::string rest = part.substr(dots + 2);
        int step = 1;
        size_t colon = rest.find(':');
        if (colon != std::string::npos) {
            step = std::stoi(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        int hi = std::stoi(rest);
        if (step < 1 || hi < lo) throw std::invalid_argument("bad k range");
        for (int k = lo; k <= hi; k += step) ks.push_back(k);
    }
    if (ks.empty()) throw std::invalid_argument("empty k range");
    return ks;
}

std::vector<std::vector<int>> parse_word_list(const std::string& text) {
    std::vector<std::vector<int>> words;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) words.push_back(parse_word(part));
    return words;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toolkit for one-vertex nonpositively curved triangle complexes of rank 7/4"};
    app.require_subcommand(1);
    std::string hash = config_hash(argc, argv);
    auto stamp = [&](json& j) {
        j["version"] = kToolVersion;
        j["config"] = hash;
    };

    // classify
    auto* cClassify = app.add_subcommand("classify", "classify orientable complexes");
    std::string mode = "full";
    cClassify->add_option("--mode", mode)->check(CLI::IsMember({"full", "six-cases"}));

    // link
    auto* cLink = app.add_subcommand("link", "link graph analysis");
    std::string linkFile;
    bool wantSpectrum = false, wantAutos = false;
    cLink->add_option("--graph", linkFile, "adjacency list file (default: the rank-7/4 link)");
    cLink->add_flag("--spectrum", wantSpectrum);
    cLink->add_flag("--autos", wantAutos);

    // spectrum
    auto* cSpectrum = app.add_subcommand("spectrum", "random walk spectrum of a graph");
    std::string spFile;
    cSpectrum->add_option("--graph", spFile);

    // homology
    auto* cHomology = app.add_subcommand("homology", "first homology of a complex");
    std::string hPreset, hFile;
    cHomology->add_option("--preset", hPreset);
    cHomology->add_option("--presentation", hFile);

    // abelianize
    auto* cAbel = app.add_subcommand("abelianize", "abelianization of a group presentation");
    int abGens = 0;
    std::vector<std::string> abRels;
    cAbel->add_option("--generators", abGens)->required();
    cAbel->add_option("--relator", abRels);

    // ball
    auto* cBall = app.add_subcommand("ball", "develop a universal cover ball");
    std::string bPreset, bFile;
    int bRadius = 0;
    cBall->add_option("--preset", bPreset);
    cBall->add_option("--presentation", bFile);
    cBall->add_option("--radius", bRadius)->required();

    // trace
    auto* cTrace = app.add_subcommand("trace", "trace a word in a developed ball");
    std::string tPreset, tFile, tWord;
    int tRadius = 4;
    cTrace->add_option("--preset", tPreset);
    cTrace->add_option("--presentation", tFile);
    cTrace->add_option("--radius", tRadius);
    cTrace->add_option("--word", tWord)->required();

    // rings
    auto* cRings = app.add_subcommand("rings", "analytic geodesic rings");
    std::string rPreset, rFile;
    cRings->add_option("--preset", rPreset);
    cRings->add_option("--presentation", rFile);

    // strips
    auto* cStrips = app.add_subcommand("strips", "periodic flat strips on a geodesic");
    std::string sPreset = "V0_1", sFile, sBoundary;
    int sHeight = 1, sPeriod = 0, sRadius = 6;
    cStrips->add_option("--preset", sPreset);
    cStrips->add_option("--presentation", sFile)->excludes("--preset");
    cStrips->add_option("--boundary", sBoundary)->required();
    cStrips->add_option("--height", sHeight);
    cStrips->add_option("--period-bound", sPeriod, "default: boundary length");
    cStrips->add_option("--radius", sRadius);

    // profile
    auto* cProfile = app.add_subcommand("profile", "mesoscopic profile as CSV");
    std::string pPreset, pFile;
    int pRadius = 6;
    double pMaxR = 1.5;
    int pMargin = 2;
    cProfile->add_option("--preset", pPreset);
    cProfile->add_option("--presentation", pFile);
    cProfile->add_option("--center-radius", pRadius, "ball radius around the center");
    cProfile->add_option("--max-r", pMaxR, "largest disk radius");
    cProfile->add_option("--margin", pMargin, "extension margin");

    // meso-check
    auto* cMeso = app.add_subcommand("meso-check", "mesoscopic rank lower bound");
    std::string mKs = "8..14:2";
    cMeso->add_option("--k", mKs, "k values, e.g. 8 or 8,10 or 8..14:2");

    // probe
    auto* cProbe = app.add_subcommand("probe", "free semigroup probe");
    std::string prPreset = "V0_2", prFile, prWords;
    int prMax = 4, prRadius = 0;
    cProbe->add_option("--preset", prPreset);
    cProbe->add_option("--presentation", prFile)->excludes("--preset");
    cProbe->add_option("--words", prWords, "semicolon separated words")->required();
    cProbe->add_option("--max-factors", prMax);
    cProbe->add_option("--radius", prRadius, "use a developed ball of this radius instead of on-demand development");

    // report
    auto* cReport = app.add_subcommand("report", "reproduction tables");
    std::string repKs = "8..14:2";
    cReport->add_option("--meso-k", repKs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        long long budget = env_budget();
        if (*cClassify) {
            auto classes = classify_orientable(mode == "full" ? ClassifyMode::Full
                                                              : ClassifyMode::SixCases);
            json j;
            stamp(j);
            j["count"] = classes.size();
            j["classes"] = json::array();
            for (const ComplexClass& c : classes) {
                json e;
                e["type"] = c.type_tag;
                e["adjacent_identifications"] = c.adjacent_identifications;
                e["h1"] = h1_of_complex(c.canonical).to_string();
                e["canonical"] = c.canonical.to_string();
                j["classes"].push_back(e);
            }
            std::cout << j.dump(2) << "\n";
        } else if (*cLink) {
            LinkGraph g = load_graph(linkFile);
            json j;
            stamp(j);
            j["vertices"] = g.n;
            j["edges"] = g.edge_count();
            j["girth"] = girth(g) == kGirthInfinity ? -1 : girth(g);
            j["ample"] = is_ample(g);
            if (wantSpectrum) j["spectrum"] = spectrum_json(random_walk_spectrum(g));
            if (wantAutos) {
                AutReport a = automorphism_group_order(g);
                j["aut"] = {{"order", a.order},
                            {"tripod_transitive", a.tripod_transitive},
                            {"tripod_pointwise_trivial", a.tripod_pointwise_trivial}};
            }
            std::cout << j.dump(2) << "\n";
        } else if (*cSpectrum) {
            json j;
            stamp(j);
            j["spectrum"] = spectrum_json(random_walk_spectrum(load_graph(spFile)));
            std::cout << j.dump(2) << "\n";
        } else if (*cHomology) {
            Presentation p = load_presentation(hPreset, hFile);
            json j;
            stamp(j);
            j["h1"] = h1_of_complex(p).to_string();
            j["euler_characteristic"] = euler_characteristic(p);
            std::cout << j.dump(2) << "\n";
        } else if (*cAbel) {
            json j;
            stamp(j);
            j["group"] = abelianization(abGens, abRels).to_string();
            std::cout << j.dump(2) << "\n";
        } else if (*cBall) {
            Presentation p = load_presentation(bPreset, bFile);
            CoverBall b = develop_ball(p, bRadius, budget);
            json j;
            stamp(j);
            j["vertices"] = b.vertex_count();
            j["edges"] = b.edge_count();
            j["triangles"] = b.triangles.size();
            j["spheres"] = b.sphere_sizes;
            std::cout << j.dump(2) << "\n";
        } else if (*cTrace) {
            Presentation p = load_presentation(tPreset, tFile);
            CoverBall b = develop_ball(p, tRadius, budget);
            std::vector<int> word = parse_word(tWord);
            int v = trace_word(b, word);
            json j;
            stamp(j);
            if (v == kOutOfBall) {
                j["in_ball"] = false;
            } else {
                j["in_ball"] = true;
                j["vertex"] = v;
                j["distance"] = b.dist[v];
                j["geodesic"] = is_geodesic_word(p, word);
            }
            std::cout << j.dump(2) << "\n";
        } else if (*cRings) {
            Presentation p = load_presentation(rPreset, rFile);
            json j;
            stamp(j);
            j["rings"] = json::array();
            for (const Ring& r : rings(p)) j["rings"].push_back(r);
            std::cout << j.dump(2) << "\n";
        } else if (*cStrips) {
            Presentation p = sFile.empty() ? preset(sPreset).pres
                                           : parse_presentation(read_file(sFile));
            std::vector<int> boundary = parse_word(sBoundary);
            int periodBound = sPeriod > 0 ? sPeriod : (int)boundary.size();
            CoverBall b = develop_ball(p, sRadius, budget);
            auto strips = strips_on_geodesic(b, Path{b.base, boundary}, sHeight, periodBound);
            json j;
            stamp(j);
            j["count"] = strips.size();
            j["strips"] = json::array();
            for (const FlatPatch& s : strips)
                j["strips"].push_back({{"period", s.period},
                                       {"opposite", word_to_string(s.opposite)},
                                       {"triangles", s.triangles.size()}});
            std::cout << j.dump(2) << "\n";
        } else if (*cProfile) {
            Presentation p = load_presentation(pPreset, pFile);
            CoverBall b = develop_ball(p, pRadius, budget);
            int mMax = (int)std::floor(pMaxR * 2.0 * std::sqrt(3.0) + 1e-9);
            std::vector<int> grid;
            for (int m = 0; m <= mMax; m++) grid.push_back(m);
            Profile prof = mesoscopic_profile(b, b.base, grid, pMargin);
            std::cout << "# polyrank " << kToolVersion << " config " << hash << "\n";
            std::cout << "r,count\n";
            for (size_t i = 0; i < prof.grid.size(); i++) {
                char buf[64];
                snprintf(buf, sizeof(buf), "%.9f,%d\n",
                         prof.grid[i] * std::sqrt(3.0) / 6.0, prof.counts[i]);
                std::cout << buf;
            }
        } else if (*cMeso) {
            json j;
            stamp(j);
            j["checks"] = json::array();
            for (int k : parse_k_range(mKs)) {
                MesoCheck m = meso_lower_bound_check(k, budget);
                j["checks"].push_back({{"k", m.k},
                                       {"mu", m.mu},
                                       {"bound", m.bound},
                                       {"stacks_low", m.stacksLow},
                                       {"stacks_high", m.stacksHigh},
                                       {"constructed", m.constructed},
                                       {"unextendable", m.unextendable},
                                       {"pass", m.pass}});
            }
            std::cout << j.dump(2) << "\n";
        } else if (*cProbe) {
            Presentation p = prFile.empty() ? preset(prPreset).pres
                                            : parse_presentation(read_file(prFile));
            std::vector<std::vector<int>> words = parse_word_list(prWords);
            bool free;
            if (prRadius > 0) {
                CoverBall b = develop_ball(p, prRadius, budget);
                free = free_semigroup_probe(b, words, prMax);
            } else {
                free = free_semigroup_probe(p, words, prMax, budget);
            }
            json j;
            stamp(j);
            j["free"] = free;
            std::cout << j.dump(2) << "\n";
        } else if (*cReport) {
            std::cout << "config " << hash << "\n" << report_tables(parse_k_range(repKs));
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
