// Timing comparison of the serial reference kernels against the OpenMP ones:
// triple enumeration, section connectivity, and facet-pair classification.

#include <chrono>
#include <cstdio>
#include <functional>

#include "polyreal/geomesh.hpp"

using namespace polyreal;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
    fn();  // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < repeats; ++k) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void row(const char* name, double serial_ms, double openmp_ms) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, openmp_ms,
                openmp_ms > 0 ? serial_ms / openmp_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    if (repeats < 1) repeats = 1;

    Representation rep2 = builtin_representation("phi2");
    FiniteGroup G = FiniteGroup::generate({rep2.gens[0], rep2.gens[1], rep2.gens[2]});
    std::printf("group order %d, %d involutions, repeats %d\n\n", G.size(),
                static_cast<int>(G.involutions().size()), repeats);
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    row("enumerate triples",
        time_ms([&] { enumerate_string_cgroups(G, ExecMode::Serial); }, repeats),
        time_ms([&] { enumerate_string_cgroups(G, ExecMode::OpenMP); }, repeats));

    std::vector<StringCGroup> classes = enumerate_string_cgroups(G);
    const StringCGroup* c53 = nullptr;
    const StringCGroup* c55 = nullptr;
    for (const StringCGroup& S : classes) {
        if (S.p == 5 && S.q == 3) c53 = &S;
        if (S.p == 5 && S.q == 5) c55 = &S;
    }
    AbstractPolyhedron P(*c53);
    row("verify axioms (sections)",
        time_ms([&] { verify_axioms(P.poset(), ExecMode::Serial); }, repeats),
        time_ms([&] { verify_axioms(P.poset(), ExecMode::OpenMP); }, repeats));

    std::vector<Mat3> images = representation_images(G, builtin_representation("phi1"));
    AbstractPolyhedron P55(*c55);
    RealizationSkeleton skel = build_skeleton(P55, images, "phi1");
    row("classify facet pairs",
        time_ms([&] { classify_family(skel, ExecMode::Serial); }, repeats),
        time_ms([&] { classify_family(skel, ExecMode::OpenMP); }, repeats));

    row("realize star facets",
        time_ms([&] { realize_classical(skel, ExecMode::Serial); }, repeats),
        time_ms([&] { realize_classical(skel, ExecMode::OpenMP); }, repeats));
    return 0;
}
