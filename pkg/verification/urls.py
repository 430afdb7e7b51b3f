from django.urls import path, include
from rest_framework.routers import DefaultRouter

from .views import VerificationRunViewSet

router = DefaultRouter()
router.register(r'runs', VerificationRunViewSet, basename='verification-run')

urlpatterns = [
    path('', include(router.urls)),
]
