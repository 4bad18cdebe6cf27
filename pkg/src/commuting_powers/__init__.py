# Finite-group toolkit for groups with commuting powers.
