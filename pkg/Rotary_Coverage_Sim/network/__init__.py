from .topology import RingTopology, NeighborView, neighbor_view

__all__ = ['RingTopology', 'NeighborView', 'neighbor_view']
