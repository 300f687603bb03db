#include "botbuster/cli.hpp"

int main(int argc, char** argv)
{
    return botbuster::cli::run(argc, argv);
}
