from django.urls import path

from .views import BoundaryView, ClassifyView

urlpatterns = [
    path('classify/', ClassifyView.as_view(), name='classify'),
    path('boundary/', BoundaryView.as_view(), name='boundary'),
]
