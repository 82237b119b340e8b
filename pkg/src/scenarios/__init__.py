from .joint import JointDistribution, joint_distribution, joint_from_instrument, conditional_distribution
from .nonuniqueness import Decomposition, DecompositionExhibit, nonuniqueness_exhibit, exhibit_eigenvalues
