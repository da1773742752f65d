from dendrifield.grid import build_grid
from dendrifield.model import PhysicalParams, Sigmoid, ExpDecay
from dendrifield.stepper import SimulationSetup


def toy_setup(n_x=32, n_xi=33, L_x=10.0, L_xi=3.0, tau=0.05, n_t=20, eps=0.5, **changes):
    """Front-experiment physics on a toy grid"""
    setup = SimulationSetup(
        grid=build_grid(n_x, n_xi, L_x, L_xi),
        params=PhysicalParams(gamma=1.0, nu=0.4, xi_0=1.0, eps=eps),
        firing_rate=Sigmoid(beta=20.0, theta=0.1),
        kernel=ExpDecay(kappa=3.0),
        tau=tau,
        n_t=n_t,
    )
    return setup.replace(**changes) if changes else setup
