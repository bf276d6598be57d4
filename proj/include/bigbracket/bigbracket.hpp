#pragma once

#include <bigbracket/bracket.hpp>
#include <bigbracket/error.hpp>
#include <bigbracket/formality.hpp>
#include <bigbracket/graded.hpp>
#include <bigbracket/gs_complex.hpp>
#include <bigbracket/lie.hpp>
#include <bigbracket/linalg.hpp>
#include <bigbracket/rational.hpp>
#include <bigbracket/tetra.hpp>
