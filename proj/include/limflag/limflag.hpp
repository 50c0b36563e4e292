#pragma once
#include "limflag/scalar.hpp"
#include "limflag/linalg.hpp"
#include "limflag/forms.hpp"
#include "limflag/flags.hpp"
#include "limflag/orbits.hpp"
#include "limflag/cayley.hpp"
#include "limflag/domains.hpp"
#include "limflag/cycles.hpp"
