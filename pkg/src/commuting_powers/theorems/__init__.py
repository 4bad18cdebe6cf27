# Executable checks of the torsion, Sylow and abelian-decomposition statements.
