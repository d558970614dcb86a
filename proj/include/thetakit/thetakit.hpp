#ifndef THETAKIT_THETAKIT_HPP
#define THETAKIT_THETAKIT_HPP

#include "cells.hpp"
#include "corpus.hpp"
#include "delta.hpp"
#include "errors.hpp"
#include "fibrancy.hpp"
#include "homology.hpp"
#include "intertwine.hpp"
#include "io.hpp"
#include "ncat.hpp"
#include "presheaf.hpp"
#include "qpaths.hpp"
#include "suites.hpp"
#include "theta.hpp"
#include "window.hpp"

#endif // THETAKIT_THETAKIT_HPP
