#pragma once

#include "kmlift/characters/dirichlet.hpp"
#include "kmlift/characters/quadratic.hpp"
