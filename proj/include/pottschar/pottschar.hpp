#pragma once

#include <pottschar/characters.hpp>
#include <pottschar/json_io.hpp>
#include <pottschar/lattice.hpp>
#include <pottschar/ncpart.hpp>
#include <pottschar/oracle.hpp>
#include <pottschar/polyring.hpp>
#include <pottschar/rational_function.hpp>
#include <pottschar/transfer.hpp>
