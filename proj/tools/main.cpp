#include <cstdio>

int main()
{
    std::fprintf(stderr, "cutoff: CLI not wired up yet\n");
    return 2;
}
