import pytest

TRAJ_HEADER = ("t,qbar1,pbar1,qbar2,pbar2,C11,C12,C13,C14,C22,C23,C24,"
               "C33,C34,C44,Sq,Sq_phi,Sc")


def _traj_row(t):
    import math
    q1, p1 = math.cos(t), math.sin(t)
    q2, p2 = math.cos(t + 0.3), math.sin(t + 0.3)
    cells = [t, q1, p1, q2, p2,
             0.5, 0.0, 0.1, 0.0, 0.5, 0.0, 0.1, 0.5, 0.0, 0.5,
             0.9, 0.95]
    return ",".join(f"{c:.12g}" for c in cells) + ",PerfectClassicalSync"


@pytest.fixture
def traj_csv(tmp_path):
    rows = [TRAJ_HEADER] + [_traj_row(0.05 * k) for k in range(400)]
    path = tmp_path / "trajectory.csv"
    path.write_text("\n".join(rows) + "\n")
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    path.write_text("n_m,Sq_bar\n0,1.0\n0.5,0.5\n1,0.333\n2,0.2\n")
    return path


@pytest.fixture
def empty_csv(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text(TRAJ_HEADER + "\n")
    return path
