#include "choicetree/cli.hpp"

int main(int argc, char** argv) { return ctree::dispatch(argc, argv); }
