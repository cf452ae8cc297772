#pragma once

#include <homsense/certify.hpp>
#include <homsense/charpoly.hpp>
#include <homsense/construct.hpp>
#include <homsense/errors.hpp>
#include <homsense/io.hpp>
#include <homsense/matrix.hpp>
#include <homsense/permcodim.hpp>
#include <homsense/polynomial.hpp>
#include <homsense/random.hpp>
#include <homsense/rational.hpp>
#include <homsense/roots.hpp>
#include <homsense/sensing.hpp>
#include <homsense/smith.hpp>
#include <homsense/structure.hpp>
