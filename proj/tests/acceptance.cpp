#include "limflag/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

using namespace limflag;
using namespace limflag::acceptance;

// Usage: acceptance [criterion ...]; no arguments runs all nine.
int main(int argc, char** argv) {
    Options opt;
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
    auto all = allCriteria();
    bool ok = true;
    std::vector<CycleTally> tallies;
    for (int id = 1; id <= 9; ++id) {
        if (!pick.empty() && std::find(pick.begin(), pick.end(), id) == pick.end()) continue;
        Result r = id == 8 ? criterion8(opt, 200, &tallies) : all[id - 1](opt);
        ok = ok && r.pass;
        std::printf("%s criterion %d: %s [%.1f s]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
        std::printf("    %s\n", r.detail.c_str());
        std::fflush(stdout);
    }
    for (auto& t : tallies) {
        if (t.disagreeingSeeds.empty()) continue;
        std::printf("    criterion 8 %s/%s disagreeing seeds:", t.family.c_str(), cycleCaseName(t.cycleCase).c_str());
        for (auto s : t.disagreeingSeeds) std::printf(" %llu", static_cast<unsigned long long>(s));
        std::printf("\n");
    }
    return ok ? 0 : 1;
}
