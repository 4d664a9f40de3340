from lowestcell import CellDatum, HeckeAlgebra, KLTable, LowestCell
from lowestcell.cells import weight_independence_check

if __name__ == "__main__":
    radius = 9
    weight_functions = {
        "equal": {"s0": 1, "s1": 1, "s2": 1},
        "L(s1) = 2": {"s0": 1, "s1": 2, "s2": 1},
        "L(s1) = 3": {"s0": 1, "s1": 3, "s2": 1},
    }

    cells = {}
    for name, weights in weight_functions.items():
        print(f"--- {name} ---")

        # Compute the KL basis on a ball and read off the lowest cell.
        table = KLTable(HeckeAlgebra(CellDatum("C2", weights=weights)), radius, progress=True)
        cell = LowestCell(table)
        cells[name] = cell

        print(f"a = {cell.a_value}")
        for d in cell.distinguished_involutions():
            print(f"  d = {d}, Δ(d) = {cell.delta(d)}")
        census = cell.left_cell_census(radius)
        print(f"  {sum(len(members) for members in census.values())} elements in {len(census)} left cells")

    # The lowest cell and its γ do not see the weights.
    reference = cells["equal"]
    for name, cell in cells.items():
        if cell is reference:
            continue
        witness = weight_independence_check(reference, cell, radius)
        print(f"equal vs {name}: {'same cell and γ' if witness is None else f'differ at {witness}'}")
